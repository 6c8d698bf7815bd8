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

#include "ndpp/downup.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "ndpp/error.hpp"
#include "ndpp/parallel.hpp"
#include "ndpp/random.hpp"
#include "ndpp/simd.hpp"

namespace ndpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IndexSet merge_sets(std::span<const int> a, std::span<const int> b) {
  IndexSet out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

// Uniformly random size-l subset of s, sorted.
IndexSet random_subset(std::span<const int> s, int l, Rng& rng) {
  IndexSet pool(s.begin(), s.end());
  for (int i = 0; i < l; ++i) {
    const auto j = i + static_cast<int>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(l);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

FieldDistribution::FieldDistribution(const SetDistribution& base, FieldVector lambda)
    : base_(base), lambda_(std::move(lambda)) {
  const int n = base_.ground_size();
  const int k = base_.subset_size();
  if (static_cast<int>(lambda_.size()) != n) {
    throw DomainError("field has " + std::to_string(lambda_.size()) + " entries, expected " +
                      std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    const double w = lambda_[i];
    if (std::isnan(w) || w < 0.0) throw DomainError("field weights must be >= 0");
    if (w == 0.0) excluded_.push_back(i);
    if (std::isinf(w)) forced_.push_back(i);
  }
  const int free_count = n - static_cast<int>(forced_.size() + excluded_.size());
  const int need = k - static_cast<int>(forced_.size());
  if (need < 0 || need > free_count) {
    throw InfeasibleError("external field leaves no admissible k-set");
  }
  // Look for one positive-mass set; past the enumeration cap the field is
  // accepted unchecked.
  IndexSet pool;
  for (int i = 0; i < n; ++i) {
    if (lambda_[i] > 0.0 && !std::isinf(lambda_[i])) pool.push_back(i);
  }
  if (binomial(free_count, need) > kMaxEnumeration) return;
  bool found = false;
  for_each_combination(pool, need, [&](std::span<const int> extra) {
    found = value(merge_sets(forced_, extra)) > 0.0;
    return !found;
  });
  if (!found) throw InfeasibleError("external field leaves no positive-mass k-set");
}

double FieldDistribution::value(std::span<const int> s) const {
  std::size_t hits = 0;
  double weight = 1.0;
  for (int i : s) {
    const double w = lambda_[i];
    if (w == 0.0) return 0.0;
    if (std::isinf(w)) {
      ++hits;
    } else {
      weight *= w;
    }
  }
  if (hits != forced_.size()) return 0.0;
  return base_.value(s) * weight;
}

FieldDistribution apply_field(const SetDistribution& mu, FieldVector lambda) {
  return FieldDistribution(mu, std::move(lambda));
}

int ChainMatrix::index_of(std::span<const int> s) const {
  const auto it = std::lower_bound(states.begin(), states.end(), s,
                                   [](const IndexSet& a, std::span<const int> b) {
                                     return std::lexicographical_compare(a.begin(), a.end(),
                                                                         b.begin(), b.end());
                                   });
  if (it == states.end() || !std::equal(it->begin(), it->end(), s.begin(), s.end())) return -1;
  return static_cast<int>(it - states.begin());
}

ChainMatrix build_downup(const SetDistribution& mu, int l) {
  const int n = mu.ground_size();
  const int k = mu.subset_size();
  if (l < 0 || l > k) throw DomainError("down-up walk needs 0 <= l <= k");
  if (binomial(n, k) > kMaxChainStates) {
    throw CapacityError("down-up walk needs C(n,k) <= 20000, got C(" + std::to_string(n) + "," +
                        std::to_string(k) + ")");
  }
  const std::vector<IndexSet> all = all_subsets(n, k);
  std::vector<double> values(all.size());
  parallel_for(all.size(), [&](std::size_t i) { values[i] = mu.value(all[i]); });

  ChainMatrix c;
  c.n = n;
  c.k = k;
  c.l = l;
  std::vector<double> mass;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (values[i] > 0.0) {
      c.states.push_back(all[i]);
      mass.push_back(values[i]);
    }
  }
  if (c.states.empty()) throw InfeasibleError("distribution has empty support");

  // Normalizer of every l-set: total mass of its supersets.
  std::unordered_map<std::uint64_t, double> z;
  for (std::size_t a = 0; a < c.states.size(); ++a) {
    for_each_combination(c.states[a], l, [&](std::span<const int> t) {
      z[colex_rank(t)] += mass[a];
      return true;
    });
  }

  const std::size_t m = c.states.size();
  c.p = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  const double down = 1.0 / static_cast<double>(binomial(k, l));
  parallel_for(m, [&](std::size_t a) {
    for_each_combination(c.states[a], l, [&](std::span<const int> t) {
      const double scale = down / z.at(colex_rank(t));
      const IndexSet rest = complement(t, n);
      for_each_combination(rest, k - l, [&](std::span<const int> extra) {
        const int b = c.index_of(merge_sets(t, extra));
        if (b >= 0) c.p(static_cast<Eigen::Index>(a), b) += scale * mass[b];
        return true;
      });
      return true;
    });
  });

  const double total = simd::sum(mass);
  c.pi.resize(m);
  for (std::size_t a = 0; a < m; ++a) c.pi[a] = mass[a] / total;
  return c;
}

double row_sum_error(const ChainMatrix& c) {
  double worst = 0.0;
  const auto cols = static_cast<std::size_t>(c.p.cols());
  for (Eigen::Index i = 0; i < c.p.rows(); ++i) {
    const double s = simd::sum({c.p.row(i).data(), cols});
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  return worst;
}

double reversibility_error(const ChainMatrix& c) {
  double worst = 0.0;
  const auto m = static_cast<Eigen::Index>(c.size());
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      worst = std::max(worst, std::fabs(c.pi[i] * c.p(i, j) - c.pi[j] * c.p(j, i)));
    }
  }
  return worst;
}

double stationarity_error(const ChainMatrix& c) {
  std::vector<double> next(c.size());
  simd::vecmat(c.pi, c.p.data(), c.size(), c.size(), next);
  double worst = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) worst = std::max(worst, std::fabs(next[j] - c.pi[j]));
  return worst;
}

std::vector<double> chain_spectrum(const ChainMatrix& c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  if (m == 0) return {};
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      a(i, j) = std::sqrt(c.pi[i]) * c.p(i, j) / std::sqrt(c.pi[j]);
    }
  }
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("chain eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<std::complex<double>> chain_eigenvalues(const ChainMatrix& c) {
  if (c.size() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(c.p), false);
  if (solver.info() != Eigen::Success) throw NumericalError("chain eigensolver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.real() > b.real(); });
  return out;
}

double spectral_gap(const ChainMatrix& c) {
  if (c.size() <= 1) return 1.0;
  return 1.0 - chain_spectrum(c)[1];
}

ChainDiagnostics diagnose(const ChainMatrix& c) {
  ChainDiagnostics d;
  d.row_sum_error = row_sum_error(c);
  d.reversibility_error = reversibility_error(c);
  d.stationarity_error = stationarity_error(c);
  const auto sym = chain_spectrum(c);
  d.min_eigenvalue = sym.empty() ? 0.0 : sym.back();
  d.gap = sym.size() <= 1 ? 1.0 : 1.0 - sym[1];
  const auto ev = chain_eigenvalues(c);
  for (const auto& e : ev) d.max_imag_part = std::max(d.max_imag_part, std::fabs(e.imag()));
  d.gap_crosscheck = ev.size() <= 1 ? 1.0 : 1.0 - ev[1].real();
  return d;
}

ConductanceResult conductance(const ChainMatrix& c) {
  ConductanceResult res;
  res.gap = spectral_gap(c);
  const std::size_t m = c.size();
  if (m > kMaxExactConductanceStates) {
    res.exact = false;
    res.value = std::numeric_limits<double>::quiet_NaN();
    res.lower = std::max(0.0, res.gap / 2.0);
    res.upper = std::min(1.0, std::sqrt(2.0 * std::max(0.0, res.gap)));
    return res;
  }

  // Flow matrix F_xy = pi_x P_xy and its transpose, both row-major.
  std::vector<double> f(m * m), ft(m * m), out(m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const double v = c.pi[x] * c.p(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      f[x * m + y] = v;
      ft[y * m + x] = v;
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    out[x] = simd::sum({&f[x * m], m}) - f[x * m + x];
  }

  std::vector<double> member(m, 0.0);
  double q = 0.0;
  double pi_a = 0.0;
  double best = kInf;
  const std::uint64_t cuts = std::uint64_t{1} << m;
  for (std::uint64_t g = 1; g < cuts; ++g) {
    const auto x = static_cast<std::size_t>(std::countr_zero(g));
    const bool adding = member[x] == 0.0;
    member[x] = 0.0;
    const double delta = out[x] - simd::dot({&f[x * m], m}, member) -
                         simd::dot({&ft[x * m], m}, member);
    if (adding) {
      q += delta;
      pi_a += c.pi[x];
      member[x] = 1.0;
    } else {
      q -= delta;
      pi_a -= c.pi[x];
    }
    if ((g & 0xFFF) == 0) {  // bound the drift of the running sums
      q = 0.0;
      pi_a = 0.0;
      for (std::size_t y = 0; y < m; ++y) {
        if (member[y] == 0.0) continue;
        q += out[y] + f[y * m + y] - simd::dot({&f[y * m], m}, member);
        pi_a += c.pi[y];
      }
    }
    if (pi_a > 0.0 && pi_a <= 0.5 + 1e-12) best = std::min(best, std::max(q, 0.0) / pi_a);
  }
  if (!std::isfinite(best)) best = 1.0;  // no admissible cut: a single state

  res.exact = true;
  res.value = best;
  res.lower = best;
  res.upper = best;
  constexpr double kSlack = 1e-9;
  res.cheeger_ok = best * best / 2.0 <= res.gap + kSlack && res.gap <= 2.0 * best + kSlack;
  return res;
}

std::vector<IndexSet> sample_walk(const SetDistribution& mu, std::span<const int> s0_in, int l,
                                  std::size_t steps, std::uint64_t seed) {
  const int n = mu.ground_size();
  const int k = mu.subset_size();
  check_index_set(s0_in, n);
  if (static_cast<int>(s0_in.size()) != k) throw DomainError("walk start must be a k-set");
  if (l < 0 || l > k) throw DomainError("down-up walk needs 0 <= l <= k");
  IndexSet s = normalized(s0_in);
  if (!(mu.value(s) > 0.0)) throw DomainError("walk start must have positive mass");

  Rng rng(seed);
  std::vector<IndexSet> traj;
  traj.reserve(steps + 1);
  traj.push_back(s);
  std::vector<IndexSet> candidates;
  std::vector<double> weights;
  for (std::size_t step = 0; step < steps; ++step) {
    const IndexSet t = random_subset(s, l, rng);
    candidates.clear();
    weights.clear();
    for_each_combination(complement(t, n), k - l, [&](std::span<const int> extra) {
      IndexSet cand = merge_sets(t, extra);
      const double w = mu.value(cand);
      if (w > 0.0) {
        candidates.push_back(std::move(cand));
        weights.push_back(w);
      }
      return true;
    });
    if (candidates.empty()) {
      throw TrappedStateError("no positive-mass completion of " + to_string(t), t);
    }
    const double u = rng.uniform() * simd::sum(weights);
    std::size_t pick = candidates.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    s = candidates[pick];
    traj.push_back(s);
  }
  return traj;
}

std::vector<std::vector<IndexSet>> sample_walks(const SetDistribution& mu,
                                                std::span<const int> s0, int l,
                                                std::size_t steps,
                                                std::span<const std::uint64_t> seeds) {
  std::vector<std::vector<IndexSet>> out(seeds.size());
  parallel_for(seeds.size(),
               [&](std::size_t i) { out[i] = sample_walk(mu, s0, l, steps, seeds[i]); });
  return out;
}

std::vector<double> empirical_density(const ChainMatrix& c,
                                      const std::vector<IndexSet>& trajectory) {
  std::vector<double> freq(c.size(), 0.0);
  if (trajectory.size() <= 1) return freq;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const int idx = c.index_of(trajectory[i]);
    if (idx < 0) throw DomainError("trajectory visits " + to_string(trajectory[i]) +
                                   ", which is not a chain state");
    freq[idx] += 1.0;
  }
  const double count = static_cast<double>(trajectory.size() - 1);
  for (double& v : freq) v /= count;
  return freq;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DomainError("tv_distance: densities differ in support size");
  return 0.5 * simd::abs_diff_sum(p, q);
}

}  // namespace ndpp
