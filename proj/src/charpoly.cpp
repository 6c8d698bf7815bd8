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

#include "ndpp/charpoly.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <complex>
#include <cmath>
#include <numbers>

#include "ndpp/error.hpp"

namespace ndpp {
namespace {

void check_marginal_args(const Kernel& k, std::span<const int> y, int subset_size) {
  check_index_set(y, k.n());
  if (subset_size < static_cast<int>(y.size()) || subset_size > k.n()) {
    throw DomainError("marginal needs |Y| <= k <= n");
  }
}

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  std::vector<std::complex<double>> out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(m), false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  return out;
}

}  // namespace

double PolyCoeffs::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void PolyCoeffs::trim(double threshold) {
  while (coeffs.size() > 1 && std::fabs(coeffs.back()) < threshold) coeffs.pop_back();
}

std::complex<double> RootMultiset::evaluate(std::complex<double> x) const {
  std::complex<double> acc = leading;
  for (const auto& r : roots) acc *= (x - r);
  return acc;
}

std::vector<std::complex<double>> power_sums(std::span<const std::complex<double>> roots,
                                             int t_max) {
  std::vector<std::complex<double>> p(static_cast<std::size_t>(std::max(t_max, 0)));
  for (const auto& r : roots) {
    std::complex<double> pw = 1.0;
    for (int t = 0; t < t_max; ++t) {
      pw *= r;
      p[t] += pw;
    }
  }
  return p;
}

std::vector<double> elementary_symmetric(std::span<const std::complex<double>> power_sums,
                                         int t_max) {
  if (t_max < 0 || static_cast<int>(power_sums.size()) < t_max) {
    throw DomainError("elementary_symmetric: need power sums p_1..p_t_max");
  }
  std::vector<std::complex<double>> e(static_cast<std::size_t>(t_max) + 1);
  e[0] = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    std::complex<double> acc = 0.0;
    double sign = 1.0;
    for (int i = 1; i <= t; ++i) {
      acc += sign * e[t - i] * power_sums[i - 1];
      sign = -sign;
    }
    e[t] = acc / static_cast<double>(t);
  }
  std::vector<double> out(e.size());
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (std::fabs(e[t].imag()) > 1e-7 * (1.0 + std::abs(e[t]))) {
      throw NumericalError("elementary_symmetric: e_" + std::to_string(t) +
                           " has imaginary residue " + std::to_string(e[t].imag()));
    }
    out[t] = e[t].real();
  }
  return out;
}

PolyCoeffs charpoly_coeffs(const Kernel& k, std::span<const int> y_in) {
  check_index_set(y_in, k.n());
  const IndexSet y = normalized(y_in);
  const int n = k.n();
  const int m = n - static_cast<int>(y.size());
  std::vector<char> free(static_cast<std::size_t>(n), 1);
  for (int i : y) free[i] = 0;

  const double frob = k.entries().norm();
  const double rho = frob > 0.0 ? frob : 1.0;
  const int count = m + 1;

  // g(rho * w) at the count-th roots of unity; the inverse DFT of these
  // samples gives the coefficients of g(rho * x) exactly for degree <= m.
  using Complex = std::complex<double>;
  std::vector<Complex> values(count);
  Eigen::MatrixXcd shifted(n, n);
  for (int j = 0; j < count; ++j) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * j / count);
    shifted = k.entries().cast<Complex>();
    for (int i = 0; i < n; ++i) {
      if (free[i]) shifted(i, i) += rho * w;
    }
    values[j] = n == 0 ? Complex(1.0) : Eigen::PartialPivLU<Eigen::MatrixXcd>(shifted).determinant();
  }

  double value_scale = 0.0;
  for (const Complex& v : values) value_scale = std::max(value_scale, std::abs(v));

  PolyCoeffs out;
  out.coeffs.resize(count);
  double pw = 1.0;
  for (int i = 0; i < count; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < count; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((i * j) % count) / count;
      acc += values[j] * std::polar(1.0, angle);
    }
    acc /= static_cast<double>(count);
    // The coefficients are real up to rounding.
    if (std::fabs(acc.imag()) > 1e-8 * (value_scale + zero_threshold(k, n))) {
      throw NumericalError("charpoly: interpolation residue " + std::to_string(acc.imag()) +
                           " too large");
    }
    out.coeffs[i] = acc.real() / pw;
    pw *= rho;
  }
  return out;
}

RootMultiset charpoly_roots(const Kernel& k, std::span<const int> y) {
  const ConditionedKernel cond = condition_on(k, y);
  RootMultiset out;
  out.leading = cond.det;
  if (cond.kernel) {
    for (const auto& ev : eigenvalues(cond.kernel->entries())) out.roots.push_back(-ev);
  }
  return out;
}

double superset_marginal(const Kernel& k, std::span<const int> y, int subset_size) {
  check_marginal_args(k, y, subset_size);
  const PolyCoeffs g = charpoly_coeffs(k, y);
  return snap_to_zero(g.coeff(k.n() - subset_size), zero_threshold(k, subset_size));
}

double spectral_marginal(const Kernel& k, std::span<const int> y, int subset_size) {
  check_marginal_args(k, y, subset_size);
  const ConditionedKernel cond = condition_on(k, y);
  const int t = subset_size - static_cast<int>(y.size());
  if (t == 0) return cond.det;
  const auto ev = eigenvalues(cond.kernel->entries());
  const auto p = power_sums(ev, t);
  const auto e = elementary_symmetric(p, t);
  return snap_to_zero(cond.det * e[t], zero_threshold(k, subset_size));
}

double lowrank_marginal(const Kernel& k, std::span<const int> y_in, int subset_size) {
  if (!k.has_low_rank()) throw DomainError("lowrank_marginal: kernel has no factors");
  check_marginal_args(k, y_in, subset_size);
  const IndexSet y = normalized(y_in);
  const auto& f = *k.low_rank();
  const int d = static_cast<int>(f.b.cols());
  const int t = subset_size - static_cast<int>(y.size());

  const IndexSet rest = complement(y, k.n());
  Matrix br(rest.size(), d);
  for (std::size_t i = 0; i < rest.size(); ++i) br.row(i) = f.b.row(rest[i]);

  double det_y = 1.0;
  Matrix core = f.c;
  if (!y.empty()) {
    Matrix by(y.size(), d);
    for (std::size_t i = 0; i < y.size(); ++i) by.row(i) = f.b.row(y[i]);
    const Lu lu(by * f.c * by.transpose());
    det_y = lu.determinant();
    if (std::fabs(det_y) < zero_threshold(k, static_cast<int>(y.size()))) {
      return superset_marginal(k, y, subset_size);
    }
    const Matrix dy = by.transpose() * lu.solve(by);
    core = f.c - f.c * dy * f.c;
  }
  if (t == 0) return det_y;
  if (t > d) return 0.0;
  const Matrix fy = core * (br.transpose() * br);
  const auto ev = eigenvalues(fy);
  const auto p = power_sums(ev, t);
  const auto e = elementary_symmetric(p, t);
  return snap_to_zero(det_y * e[t], zero_threshold(k, subset_size));
}

}  // namespace ndpp
