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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ndpp/kernel.hpp"

namespace ndpp {

/// sum_i coeffs[i] * x^i
struct PolyCoeffs {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Coefficient of x^i; zero past the stored degree.
  double coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[i] : 0.0;
  }
  double evaluate(double x) const;
  /// Drops trailing coefficients with |c| < threshold (keeps at least one).
  void trim(double threshold);
};

/// g(lambda) = leading * prod_i (lambda - roots[i])
struct RootMultiset {
  std::vector<std::complex<double>> roots;
  double leading = 1.0;

  std::complex<double> evaluate(std::complex<double> x) const;
};

/// Newton's identities: t e_t = sum_{i=1}^{t} (-1)^{i-1} e_{t-i} p_i.
/// `power_sums[i]` holds p_{i+1}. Returns e_0 = 1, e_1, ..., e_{t_max}.
/// Throws NumericalError when an e_t keeps an imaginary part above
/// 1e-7 * (1 + |e_t|).
std::vector<double> elementary_symmetric(std::span<const std::complex<double>> power_sums,
                                         int t_max);

/// p_1..p_{t_max} of a root list.
std::vector<std::complex<double>> power_sums(std::span<const std::complex<double>> roots,
                                             int t_max);

/// Coefficients of g(lambda) = det(L + lambda * diag(1_{[n] \ Y})), found by
/// evaluating g on the circle |lambda| = ||L||_F at the (m+1)-th roots of unity
/// (m = n - |Y|) and inverting the DFT.
PolyCoeffs charpoly_coeffs(const Kernel& k, std::span<const int> y);

/// Roots of g from the conditioned kernel: g(lambda) = det(L_Y) det(L^Y +
/// lambda I), so the roots are the negated eigenvalues of L^Y.
RootMultiset charpoly_roots(const Kernel& k, std::span<const int> y);

/// sum over size-k supersets S of Y of det(L_S): the coefficient of
/// lambda^{n-k} in charpoly_coeffs(k, Y).
double superset_marginal(const Kernel& k, std::span<const int> y, int subset_size);

/// Same quantity from the eigenvalues of L^Y and Newton's identities.
/// Requires det(L_Y) above the zero threshold.
double spectral_marginal(const Kernel& k, std::span<const int> y, int subset_size);

/// Low-rank route: eigenvalues of the d x d matrix
/// F_Y = (C - C D_Y C) B_R^T B_R, D_Y = B_Y^T L_Y^{-1} B_Y, scaled by det(L_Y).
/// Falls back to superset_marginal when L_Y is singular.
double lowrank_marginal(const Kernel& k, std::span<const int> y, int subset_size);

}  // namespace ndpp
