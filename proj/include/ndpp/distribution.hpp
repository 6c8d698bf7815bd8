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

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ndpp/combinatorics.hpp"
#include "ndpp/kernel.hpp"

namespace ndpp {

/// Unnormalized density mu over the size-k subsets of [0, n), exposed as an
/// evaluation oracle. Implementations must be safe to call concurrently.
class SetDistribution {
 public:
  using NeighborVisitor =
      std::function<void(std::span<const int> t, double value)>;

  virtual ~SetDistribution() = default;

  virtual int ground_size() const = 0;
  virtual int subset_size() const = 0;

  /// mu(S) for a sorted size-k set S.
  virtual double value(std::span<const int> s) const = 0;

  /// mu(Y) = sum of mu(S) over size-k supersets S of Y. The default
  /// enumerates the supersets.
  virtual double marginal(std::span<const int> y) const;

  /// Magnitude hint used to size iteration caps (max |L_ij| for kernels).
  virtual double scale_hint() const { return 1.0; }

  /// Evaluates mu on every set of the r-swap neighborhood of S, in the order
  /// of for_each_neighbor. Returns the number of oracle evaluations.
  virtual std::uint64_t scan_neighborhood(std::span<const int> s, int r,
                                          const NeighborVisitor& visit) const;
};

/// Brute-force superset sum; independent of any kernel structure.
double enumerate_marginal(const SetDistribution& mu, std::span<const int> y);

enum class MarginalRoute {
  kAuto,           // low-rank when factors are present, else interpolation
  kInterpolation,  // characteristic-polynomial interpolation
  kSpectral,       // eigenvalues of the conditioned kernel + Newton identities
  kEnumeration,    // brute force over supersets
};

/// mu(S) = det(L_S), with minors below the zero threshold reported as 0.
class KernelDistribution : public SetDistribution {
 public:
  KernelDistribution(Kernel kernel, int k, MarginalRoute route = MarginalRoute::kAuto);

  int ground_size() const override { return kernel_.n(); }
  int subset_size() const override { return k_; }
  double value(std::span<const int> s) const override;
  double marginal(std::span<const int> y) const override;
  double scale_hint() const override { return kernel_.max_abs(); }

  /// Uses cached inverses of L_{S \ removed} and Schur complements, so each
  /// r-swap costs O(r k^2 + r^3) after an O(k^3) setup per removed block.
  std::uint64_t scan_neighborhood(std::span<const int> s, int r,
                                  const NeighborVisitor& visit) const override;

  const Kernel& kernel() const { return kernel_; }
  MarginalRoute route() const { return route_; }

 private:
  Kernel kernel_;
  int k_;
  MarginalRoute route_;
};

/// Wraps an arbitrary callable; marginals by enumeration.
class FunctionDistribution : public SetDistribution {
 public:
  using Fn = std::function<double(std::span<const int>)>;
  FunctionDistribution(int n, int k, Fn fn);

  int ground_size() const override { return n_; }
  int subset_size() const override { return k_; }
  double value(std::span<const int> s) const override { return fn_(s); }

 private:
  int n_;
  int k_;
  Fn fn_;
};

/// mu == 1 on every k-set.
FunctionDistribution uniform_distribution(int n, int k);

/// Evaluates a base distribution once on every k-set and answers from the
/// table afterwards. Limited to C(n,k) <= 2e6 and n <= 62.
class TabulatedDistribution : public SetDistribution {
 public:
  explicit TabulatedDistribution(const SetDistribution& base);

  int ground_size() const override { return n_; }
  int subset_size() const override { return k_; }
  double value(std::span<const int> s) const override;
  double scale_hint() const override { return scale_; }

  std::span<const double> table() const { return values_; }

 private:
  int n_;
  int k_;
  double scale_;
  std::vector<double> values_;  // indexed by colex rank
};

/// mu restricted to subsets of a pool P, re-indexed to [0, |P|).
class RestrictedDistribution : public SetDistribution {
 public:
  RestrictedDistribution(const SetDistribution& base, IndexSet pool);

  int ground_size() const override { return static_cast<int>(pool_.size()); }
  int subset_size() const override { return base_.subset_size(); }
  double value(std::span<const int> local) const override;
  double scale_hint() const override { return base_.scale_hint(); }

  IndexSet to_global(std::span<const int> local) const;
  const IndexSet& pool() const { return pool_; }

 private:
  const SetDistribution& base_;
  IndexSet pool_;
};

inline constexpr std::uint64_t kMaxEnumeration = 2'000'000;

}  // namespace ndpp
