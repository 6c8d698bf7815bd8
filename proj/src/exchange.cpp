// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ndpp/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "ndpp/error.hpp"

namespace ndpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lhs <= rhs up to relative slack.
bool leq(double lhs, double rhs) {
  return lhs <= rhs + kExchangeTolerance * std::max(std::fabs(lhs), std::fabs(rhs));
}

void check_pair(const SetDistribution& mu, std::span<const int> s, std::span<const int> t) {
  check_index_set(s, mu.ground_size());
  check_index_set(t, mu.ground_size());
  if (static_cast<int>(s.size()) != mu.subset_size() ||
      static_cast<int>(t.size()) != mu.subset_size()) {
    throw DomainError("exchange checks need |S| = |T| = k");
  }
}

// Needed beta for lhs <= beta * rhs.
double needed_beta(double lhs, double rhs) {
  if (lhs <= 0.0) return 0.0;
  if (rhs <= 0.0) return kInf;
  return lhs / rhs;
}

}  // namespace

MapOptimum brute_force_map(const SetDistribution& mu) {
  const int n = mu.ground_size();
  const int k = mu.subset_size();
  if (binomial(n, k) > kMaxEnumeration) throw CapacityError("brute force needs C(n,k) <= 2e6");
  MapOptimum best;
  best.value = -kInf;
  for_each_combination(n, k, [&](std::span<const int> s) {
    const double v = mu.value(s);
    if (v > best.value) {  // first in lexicographic order wins ties
      best.value = v;
      best.set.assign(s.begin(), s.end());
    }
    return true;
  });
  return best;
}

std::vector<IndexSet> r_exchanges(std::span<const int> s, std::span<const int> t, int r) {
  const IndexSet s_only = set_difference(s, t);
  const IndexSet t_only = set_difference(t, s);
  std::vector<IndexSet> out;
  for_each_combination(s_only, r, [&](std::span<const int> from_s) {
    for_each_combination(t_only, r, [&](std::span<const int> from_t) {
      IndexSet u;
      std::merge(from_s.begin(), from_s.end(), from_t.begin(), from_t.end(),
                 std::back_inserter(u));
      out.push_back(std::move(u));
      return true;
    });
    return true;
  });
  return out;
}

IndexSet apply_exchange(std::span<const int> s, std::span<const int> u) {
  return symmetric_difference(s, u);
}

std::string_view variant_name(ExchangeVariant v) {
  switch (v) {
    case ExchangeVariant::kWeak: return "weak";
    case ExchangeVariant::kPairExchange: return "pair_exchange";
    case ExchangeVariant::kStrongBasis: return "strong_basis";
  }
  return "unknown";
}

ExchangeReport check_pair_exchange(const SetDistribution& mu, std::span<const int> s_in,
                                   std::span<const int> t_in, int r, double beta) {
  check_pair(mu, s_in, t_in);
  if (r < 1) throw DomainError("exchange radius must be >= 1");
  const int k = mu.subset_size();
  ExchangeReport rep;
  rep.variant = ExchangeVariant::kPairExchange;
  rep.s = normalized(s_in);
  rep.t = normalized(t_in);
  rep.distance = swap_distance(rep.s, rep.t);
  rep.beta_threshold = beta > 0.0 ? beta : std::pow(static_cast<double>(k), 4);
  if (rep.distance == 0) {
    rep.vacuous = true;
    rep.measured_beta = 1.0;
    rep.passed = true;
    return rep;
  }

  const double lhs = mu.value(rep.s) * mu.value(rep.t);
  rep.measured_beta = kInf;
  bool passed = lhs <= 0.0;
  bool sum_ok = lhs <= 0.0;
  for (int i = 1; i <= std::min(r, rep.distance); ++i) {
    double max_st = 0.0, max_ts = 0.0, sum_st = 0.0, sum_ts = 0.0;
    IndexSet arg_st, arg_ts;
    for (const IndexSet& u : r_exchanges(rep.s, rep.t, i)) {
      const double a = mu.value(apply_exchange(rep.s, u));
      const double b = mu.value(apply_exchange(rep.t, u));
      sum_st += a;
      sum_ts += b;
      if (arg_st.empty() || a > max_st) {
        max_st = a;
        arg_st = u;
      }
      if (arg_ts.empty() || b > max_ts) {
        max_ts = b;
        arg_ts = u;
      }
    }
    rep.witnesses.push_back({i, arg_st});
    rep.witnesses.push_back({i, arg_ts});
    const double rhs = max_st * max_ts;
    const double b_i = std::pow(needed_beta(lhs, rhs), 1.0 / i);
    rep.measured_beta = std::min(rep.measured_beta, b_i);
    if (leq(lhs, std::pow(rep.beta_threshold, i) * rhs)) passed = true;
    // Only radii 1 and 2 appear in the summed form.
    if (i <= 2 && leq(lhs, sum_st * sum_ts)) sum_ok = true;
  }
  if (lhs <= 0.0) rep.measured_beta = 0.0;
  rep.passed = passed;
  rep.sum_bound_holds = sum_ok;
  return rep;
}

ExchangeReport check_weak_exchange(const SetDistribution& mu, std::span<const int> s_in,
                                   std::span<const int> t_in, int r, double beta) {
  check_pair(mu, s_in, t_in);
  if (r < 1) throw DomainError("exchange radius must be >= 1");
  ExchangeReport rep;
  rep.variant = ExchangeVariant::kWeak;
  rep.s = normalized(s_in);
  rep.t = normalized(t_in);
  rep.distance = swap_distance(rep.s, rep.t);
  rep.beta_threshold = beta;
  if (rep.distance == 0) throw DomainError("weak exchange needs d(S,T) >= 1");
  const double mu_s = mu.value(rep.s);
  const double mu_t = mu.value(rep.t);
  if (!(mu_t > 0.0)) throw DomainError("weak exchange undefined: mu(T) = 0");

  rep.measured_beta = kInf;
  ExchangeWitness best{0, {}};
  for (int i = 1; i <= std::min(r, rep.distance); ++i) {
    const double damp = std::pow(mu_s / mu_t, static_cast<double>(i) / rep.distance);
    for (const IndexSet& u : r_exchanges(rep.s, rep.t, i)) {
      const double b = needed_beta(mu_s, mu.value(apply_exchange(rep.s, u)) * damp);
      if (b < rep.measured_beta || best.u.empty()) {
        if (b < rep.measured_beta) rep.measured_beta = b;
        if (best.u.empty() || b <= rep.measured_beta) best = {i, u};
      }
    }
  }
  rep.witnesses.push_back(best);
  rep.passed = beta > 0.0 ? leq(rep.measured_beta, beta) : std::isfinite(rep.measured_beta);
  return rep;
}

ExchangeReport check_strong_basis_exchange(const SetDistribution& mu, std::span<const int> s_in,
                                           std::span<const int> t_in,
                                           std::span<const int> candidates, double beta) {
  check_pair(mu, s_in, t_in);
  ExchangeReport rep;
  rep.variant = ExchangeVariant::kStrongBasis;
  rep.s = normalized(s_in);
  rep.t = normalized(t_in);
  rep.distance = swap_distance(rep.s, rep.t);
  rep.beta_threshold = beta;
  IndexSet js = set_difference(rep.t, rep.s);
  if (!candidates.empty()) js = set_intersection(js, normalized(candidates));
  if (rep.distance == 0 || js.empty()) {
    rep.vacuous = true;
    rep.measured_beta = 1.0;
    rep.passed = true;
    return rep;
  }
  const IndexSet is = set_difference(rep.s, rep.t);
  const double lhs = mu.value(rep.s) * mu.value(rep.t);
  rep.measured_beta = 0.0;
  for (int j : js) {
    double best = kInf;
    int best_i = is.front();
    for (int i : is) {
      IndexSet s_swap = rep.s;  // S - i + j
      std::erase(s_swap, i);
      s_swap.insert(std::upper_bound(s_swap.begin(), s_swap.end(), j), j);
      IndexSet t_swap = rep.t;  // T + i - j
      std::erase(t_swap, j);
      t_swap.insert(std::upper_bound(t_swap.begin(), t_swap.end(), i), i);
      const double b = needed_beta(lhs, mu.value(s_swap) * mu.value(t_swap));
      if (b < best) {
        best = b;
        best_i = i;
      }
    }
    rep.witnesses.push_back({1, normalized(std::vector<int>{best_i, j})});
    rep.measured_beta = std::max(rep.measured_beta, best);
  }
  rep.passed = beta > 0.0 ? leq(rep.measured_beta, beta) : std::isfinite(rep.measured_beta);
  return rep;
}

PolyCoeffs exchange_polynomial(const SetDistribution& mu, std::span<const int> s_in,
                               std::span<const int> t_in) {
  check_pair(mu, s_in, t_in);
  const IndexSet s = normalized(s_in);
  const IndexSet t = normalized(t_in);
  const IndexSet common = set_intersection(s, t);
  const IndexSet s_only = set_difference(s, t);
  const IndexSet t_only = set_difference(t, s);
  const int d = static_cast<int>(s_only.size());
  PolyCoeffs out;
  out.coeffs.assign(static_cast<std::size_t>(2 * d + 1), 0.0);
  // W = common + (i elements of S \ T) + (d - i elements of T \ S).
  for (int i = 0; i <= d; ++i) {
    double total = 0.0;
    for_each_combination(s_only, i, [&](std::span<const int> from_s) {
      for_each_combination(t_only, d - i, [&](std::span<const int> from_t) {
        IndexSet w = common;
        w.insert(w.end(), from_s.begin(), from_s.end());
        w.insert(w.end(), from_t.begin(), from_t.end());
        std::sort(w.begin(), w.end());
        total += mu.value(w);
        return true;
      });
      return true;
    });
    out.coeffs[static_cast<std::size_t>(2 * i)] = total;
  }
  return out;
}

bool hurwitz_coeff_check(const PolyCoeffs& p, bool even_only) {
  for (double c : p.coeffs) {
    if (c < 0.0) throw DomainError("hurwitz_coeff_check needs nonnegative coefficients");
  }
  std::vector<double> a;
  if (even_only) {
    for (std::size_t i = 0; i < p.coeffs.size(); i += 2) a.push_back(p.coeffs[i]);
  } else {
    a = p.coeffs;
  }
  const int n = static_cast<int>(a.size()) - 1;
  if (n <= 2) return true;
  const double rhs = std::max(a[1] * a[n - 1], a[2] * a[n - 2]);
  return leq(a[n] * a[0], rhs);
}

Matrix hurwitz_matrix(const PolyCoeffs& p) {
  for (double c : p.coeffs) {
    if (c < 0.0) throw DomainError("hurwitz_matrix needs nonnegative coefficients");
  }
  const int n = std::max(p.degree(), 0);
  Matrix h = Matrix::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int idx = 2 * j - i;
      if (idx >= 0 && idx <= n) h(i - 1, j - 1) = p.coeff(idx);
    }
  }
  return h;
}

double min_two_by_two_minor(const Matrix& m) {
  double lowest = kInf;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index r1 = 0; r1 < rows; ++r1) {
    for (Eigen::Index r2 = r1 + 1; r2 < rows; ++r2) {
      for (Eigen::Index c1 = 0; c1 < cols; ++c1) {
        for (Eigen::Index c2 = c1 + 1; c2 < cols; ++c2) {
          lowest = std::min(lowest, m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1));
        }
      }
    }
  }
  return lowest;
}

}  // namespace ndpp
