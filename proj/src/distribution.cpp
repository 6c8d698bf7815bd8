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

#include "ndpp/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "ndpp/charpoly.hpp"
#include "ndpp/error.hpp"

namespace ndpp {

double SetDistribution::marginal(std::span<const int> y) const {
  return enumerate_marginal(*this, y);
}

std::uint64_t SetDistribution::scan_neighborhood(std::span<const int> s, int r,
                                                 const NeighborVisitor& visit) const {
  std::uint64_t evals = 0;
  for_each_neighbor(s, r, ground_size(),
                    [&](std::span<const int> t, std::span<const int>, std::span<const int>) {
                      ++evals;
                      visit(t, value(t));
                    });
  return evals;
}

double enumerate_marginal(const SetDistribution& mu, std::span<const int> y_in) {
  const int n = mu.ground_size();
  const int k = mu.subset_size();
  check_index_set(y_in, n);
  const IndexSet y = normalized(y_in);
  const int extra = k - static_cast<int>(y.size());
  if (extra < 0) throw DomainError("marginal: |Y| exceeds the subset size");
  const IndexSet rest = complement(y, n);
  if (binomial(static_cast<int>(rest.size()), extra) > kMaxEnumeration) {
    throw CapacityError("marginal enumeration too large");
  }
  double total = 0.0;
  IndexSet s;
  for_each_combination(rest, extra, [&](std::span<const int> add) {
    s.clear();
    std::merge(y.begin(), y.end(), add.begin(), add.end(), std::back_inserter(s));
    total += mu.value(s);
    return true;
  });
  return total;
}

KernelDistribution::KernelDistribution(Kernel kernel, int k, MarginalRoute route)
    : kernel_(std::move(kernel)), k_(k), route_(route) {
  if (k < 0 || k > kernel_.n()) throw DomainError("subset size must satisfy 0 <= k <= n");
}

double KernelDistribution::value(std::span<const int> s) const {
  if (static_cast<int>(s.size()) != k_) throw DomainError("value: set has the wrong size");
  return snap_to_zero(principal_minor(kernel_, s), zero_threshold(kernel_, k_));
}

double KernelDistribution::marginal(std::span<const int> y) const {
  if (static_cast<int>(y.size()) == k_) return value(normalized(y));
  switch (route_) {
    case MarginalRoute::kAuto:
      return kernel_.has_low_rank() ? lowrank_marginal(kernel_, y, k_)
                                    : superset_marginal(kernel_, y, k_);
    case MarginalRoute::kInterpolation:
      return superset_marginal(kernel_, y, k_);
    case MarginalRoute::kSpectral:
      try {
        return spectral_marginal(kernel_, y, k_);
      } catch (const ConditioningError&) {
        return superset_marginal(kernel_, y, k_);
      }
    case MarginalRoute::kEnumeration:
      return enumerate_marginal(*this, y);
  }
  return 0.0;
}

std::uint64_t KernelDistribution::scan_neighborhood(std::span<const int> s, int r,
                                                    const NeighborVisitor& visit) const {
  const int n = kernel_.n();
  const double thr = zero_threshold(kernel_, k_);
  const IndexSet outside = complement(s, n);
  std::uint64_t evals = 1;
  visit(s, value(s));
  IndexSet t;
  for (int size = 1; size <= std::min(r, k_); ++size) {
    for_each_combination(s, size, [&](std::span<const int> removed) {
      const SubsetState kept = SubsetState::make(kernel_, set_difference(s, removed), true);
      for_each_combination(outside, size, [&](std::span<const int> added) {
        t.clear();
        std::merge(kept.indices.begin(), kept.indices.end(), added.begin(), added.end(),
                   std::back_inserter(t));
        const IncrementalMinor inc = incremental_minor(kept, kernel_, added);
        ++evals;
        visit(t, snap_to_zero(inc.value, thr));
        return true;
      });
      return true;
    });
  }
  return evals;
}

FunctionDistribution::FunctionDistribution(int n, int k, Fn fn)
    : n_(n), k_(k), fn_(std::move(fn)) {
  if (n < 1 || k < 0 || k > n) throw DomainError("distribution needs 0 <= k <= n, n >= 1");
}

FunctionDistribution uniform_distribution(int n, int k) {
  return FunctionDistribution(n, k, [](std::span<const int>) { return 1.0; });
}

TabulatedDistribution::TabulatedDistribution(const SetDistribution& base)
    : n_(base.ground_size()), k_(base.subset_size()), scale_(base.scale_hint()) {
  if (n_ > 62 || binomial(n_, k_) > kMaxEnumeration) {
    throw CapacityError("tabulation needs C(n,k) <= 2e6");
  }
  values_.resize(static_cast<std::size_t>(binomial(n_, k_)));
  for_each_combination(n_, k_, [&](std::span<const int> s) {
    values_[colex_rank(s)] = base.value(s);
    return true;
  });
}

double TabulatedDistribution::value(std::span<const int> s) const {
  if (static_cast<int>(s.size()) != k_) throw DomainError("value: set has the wrong size");
  return values_[colex_rank(s)];
}

RestrictedDistribution::RestrictedDistribution(const SetDistribution& base, IndexSet pool)
    : base_(base), pool_(normalized(pool)) {
  check_index_set(pool_, base.ground_size());
  if (static_cast<int>(pool_.size()) < base.subset_size()) {
    throw InfeasibleError("pool has fewer than k elements");
  }
}

IndexSet RestrictedDistribution::to_global(std::span<const int> local) const {
  IndexSet out;
  out.reserve(local.size());
  for (int i : local) out.push_back(pool_.at(static_cast<std::size_t>(i)));
  return out;
}

double RestrictedDistribution::value(std::span<const int> local) const {
  return base_.value(to_global(local));
}

}  // namespace ndpp
