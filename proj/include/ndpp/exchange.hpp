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

#include <string_view>
#include <vector>

#include "ndpp/charpoly.hpp"
#include "ndpp/distribution.hpp"

namespace ndpp {

/// Exhaustive argmax of mu over all k-sets, lexicographic tie-break.
/// Throws CapacityError when C(n,k) > 2e6.
struct MapOptimum {
  IndexSet set;
  double value = 0.0;
};
MapOptimum brute_force_map(const SetDistribution& mu);

/// All U inside S delta T with |U & S| = |U & T| = r.
std::vector<IndexSet> r_exchanges(std::span<const int> s, std::span<const int> t, int r);

/// S delta U for an exchange U.
IndexSet apply_exchange(std::span<const int> s, std::span<const int> u);

enum class ExchangeVariant { kWeak, kPairExchange, kStrongBasis };

std::string_view variant_name(ExchangeVariant v);

struct ExchangeWitness {
  int s = 0;   // exchange size
  IndexSet u;  // U with |U & S| = |U & T| = s
};

struct ExchangeReport {
  IndexSet s;
  IndexSet t;
  ExchangeVariant variant = ExchangeVariant::kPairExchange;
  int distance = 0;  // |S \ T|
  bool vacuous = false;
  std::vector<ExchangeWitness> witnesses;
  double measured_beta = 0.0;  // +inf when no finite beta works
  double beta_threshold = 0.0;  // beta the pass/fail verdict was taken at
  bool passed = false;

  // Pair exchange only: the summed form
  //   mu(S) mu(T) <= max_i (sum_U mu(S delta U)) (sum_U mu(T delta U)).
  bool sum_bound_holds = true;
};

/// Relative slack used by every inequality check.
inline constexpr double kExchangeTolerance = 1e-9;

/// (r, beta)-approximate exchange between S and T. For i = 1..min(r, d):
/// M^i(S->T) = max over U in E^i(S,T) of mu(S delta U), likewise M^i(T->S);
/// measured_beta = min_i (mu(S) mu(T) / (M^i(S->T) M^i(T->S)))^{1/i}.
/// Passes iff mu(S) mu(T) <= beta^i M^i M^i for some i; beta defaults to k^4.
ExchangeReport check_pair_exchange(const SetDistribution& mu, std::span<const int> s,
                                   std::span<const int> t, int r, double beta = 0.0);

/// Weak exchange: the smallest beta with
///   mu(S) <= beta mu(S delta U) (mu(S) / mu(T))^{s / d(S,T)}
/// over s in [1, r] and U in E^s(S,T). Passes when finite, or when
/// `beta` > 0 is given and measured_beta <= beta.
/// Throws DomainError when d(S,T) = 0 or mu(T) = 0.
ExchangeReport check_weak_exchange(const SetDistribution& mu, std::span<const int> s,
                                   std::span<const int> t, int r, double beta = 0.0);

/// Strong basis exchange: for every j in T \ S some i in S \ T with
///   mu(S) mu(T) <= beta mu(S - i + j) mu(T + i - j).
/// measured_beta = max over j of the min over i of the needed beta.
/// `candidates`, when non-empty, restricts j. Passes when finite (or
/// <= beta when given).
ExchangeReport check_strong_basis_exchange(const SetDistribution& mu, std::span<const int> s,
                                           std::span<const int> t,
                                           std::span<const int> candidates = {},
                                           double beta = 0.0);

/// b_0..b_{2t} with b_{2i} = sum of mu(W) over k-sets W with
/// S & T <= W <= S | T and |W & (S \ T)| = i; odd entries are zero.
/// b_{2t} = mu(S) and b_0 = mu(T).
PolyCoeffs exchange_polynomial(const SetDistribution& mu, std::span<const int> s,
                               std::span<const int> t);

/// a_n a_0 <= max(a_1 a_{n-1}, a_2 a_{n-2}) for n = degree > 2. With
/// `even_only` the odd entries are ignored and the check reads
/// a_0 a_{2t} <= max(a_2 a_{2t-2}, a_4 a_{2t-4}).
/// Throws DomainError on a negative coefficient.
bool hurwitz_coeff_check(const PolyCoeffs& p, bool even_only);

/// n x n matrix with h_ij = a_{2j-i} (1-based) when 0 <= 2j-i <= n.
Matrix hurwitz_matrix(const PolyCoeffs& p);

/// Smallest 2 x 2 minor of a matrix (+inf for fewer than two rows/columns).
double min_two_by_two_minor(const Matrix& m);

}  // namespace ndpp
