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
#include <cstdint>
#include <limits>
#include <vector>

#include "ndpp/distribution.hpp"

namespace ndpp {

/// Per-element weights for an external field. Zero deletes an element,
/// +infinity forces it into every set.
using FieldVector = std::vector<double>;

/// (lambda * mu)(S) = mu(S) * prod_{i in S} lambda_i, with forced elements
/// contributing a factor of one.
class FieldDistribution : public SetDistribution {
 public:
  /// Throws DomainError on a negative or NaN weight or a size mismatch,
  /// InfeasibleError when no k-set keeps positive mass.
  FieldDistribution(const SetDistribution& base, FieldVector lambda);

  int ground_size() const override { return base_.ground_size(); }
  int subset_size() const override { return base_.subset_size(); }
  double value(std::span<const int> s) const override;
  double scale_hint() const override { return base_.scale_hint(); }

  const FieldVector& field() const { return lambda_; }
  const IndexSet& forced() const { return forced_; }
  const IndexSet& excluded() const { return excluded_; }

 private:
  const SetDistribution& base_;
  FieldVector lambda_;
  IndexSet forced_;
  IndexSet excluded_;
};

FieldDistribution apply_field(const SetDistribution& mu, FieldVector lambda);

/// The k <-> l down-up walk restricted to the support of mu.
struct ChainMatrix {
  int n = 0;
  int k = 0;
  int l = 0;
  std::vector<IndexSet> states;  // k-sets with mu > 0, lexicographic
  Matrix p;                      // row-stochastic transition matrix
  std::vector<double> pi;        // normalized mu on `states`

  std::size_t size() const { return pi.size(); }
  /// Position of a state, or -1.
  int index_of(std::span<const int> s) const;
};

inline constexpr std::uint64_t kMaxChainStates = 20'000;

/// P(S, S') = sum over l-sets T in S & S' of
///   (1 / C(k,l)) * mu(S') / sum_{W >= T} mu(W),
/// i.e. drop k - l uniform elements, then re-complete proportionally to mu.
/// Throws CapacityError when C(n,k) > 20000 and InfeasibleError when mu has
/// empty support.
ChainMatrix build_downup(const SetDistribution& mu, int l);

struct ChainDiagnostics {
  double row_sum_error = 0.0;       // max |sum_j P_ij - 1|
  double reversibility_error = 0.0; // max |pi_i P_ij - pi_j P_ji|
  double stationarity_error = 0.0;  // max |(pi P)_j - pi_j|
  double min_eigenvalue = 0.0;      // of the symmetrized operator
  double max_imag_part = 0.0;       // over eigenvalues of P itself
  double gap = 0.0;
  double gap_crosscheck = 0.0;      // 1 - lambda_2 from the nonsymmetric solver
};

double row_sum_error(const ChainMatrix& c);
double reversibility_error(const ChainMatrix& c);
double stationarity_error(const ChainMatrix& c);

/// Eigenvalues of D^{1/2} P D^{-1/2}, D = diag(pi), in descending order.
/// Real for a reversible chain.
std::vector<double> chain_spectrum(const ChainMatrix& c);

/// Eigenvalues of P from a general (nonsymmetric) solver.
std::vector<std::complex<double>> chain_eigenvalues(const ChainMatrix& c);

/// 1 - lambda_2; a one-state chain has gap 1.
double spectral_gap(const ChainMatrix& c);

ChainDiagnostics diagnose(const ChainMatrix& c);

struct ConductanceResult {
  bool exact = false;
  double value = 0.0;  // exact Phi, valid when `exact`
  double lower = 0.0;  // interval containing Phi
  double upper = 0.0;
  double gap = 0.0;
  bool cheeger_ok = true;  // Phi^2 / 2 <= gap <= 2 Phi, checked when exact
};

inline constexpr std::size_t kMaxExactConductanceStates = 22;

/// Phi = min over cuts A with pi(A) <= 1/2 of Q(A, A^c) / pi(A). Exact by
/// Gray-code enumeration for at most 22 states; otherwise the interval
/// gap / 2 <= Phi <= sqrt(2 gap) obtained by inverting Cheeger's inequality.
ConductanceResult conductance(const ChainMatrix& c);

/// The walk started at S0: steps + 1 states including S0.
/// Throws DomainError when mu(S0) <= 0 and TrappedStateError when an up-step
/// has no positive-mass completion.
std::vector<IndexSet> sample_walk(const SetDistribution& mu, std::span<const int> s0, int l,
                                  std::size_t steps, std::uint64_t seed);

/// Independent walks, one per seed, run concurrently.
std::vector<std::vector<IndexSet>> sample_walks(const SetDistribution& mu,
                                                std::span<const int> s0, int l,
                                                std::size_t steps,
                                                std::span<const std::uint64_t> seeds);

/// Visit frequencies of trajectory[1..] over the chain's states. Throws
/// DomainError on a state outside the chain.
std::vector<double> empirical_density(const ChainMatrix& c,
                                      const std::vector<IndexSet>& trajectory);

/// Half the L1 distance. Throws DomainError on a length mismatch.
double tv_distance(std::span<const double> p, std::span<const double> q);

}  // namespace ndpp
