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

#include <cstdint>
#include <vector>

#include "ndpp/distribution.hpp"
#include "ndpp/greedy.hpp"
#include "ndpp/kernel.hpp"

namespace ndpp {

struct SearchConfig {
  int r = 2;            // swap radius
  double zeta = 0.5;    // accept T only when mu(S) < zeta * mu(T)
  int max_iters = 0;    // 0: 64 k (1 + log2(1 + scale * n))

  /// Throws DomainError unless 1 <= r <= min(k, 4) and 0 < zeta < 1.
  void validate(int subset_size) const;
};

struct SearchStep {
  IndexSet set;
  double value = 0.0;
  double factor = 0.0;  // value / previous value
};

struct SearchTrace {
  std::vector<SearchStep> steps;
  bool certified_local_max = false;
  std::uint64_t neighborhood_evals = 0;
  int max_iters = 0;
};

struct SearchResult {
  IndexSet set;
  double value = 0.0;
  SearchTrace trace;
};

/// Every T with |T| = |S| and |S \ T| <= r, S first.
std::vector<IndexSet> neighborhood(std::span<const int> s, int r, int n);

/// Default iteration cap for a distribution.
int default_max_iters(const SetDistribution& mu);

/// Best-improvement local search over r-swap neighborhoods. While some
/// neighbor T has mu(S) < zeta mu(T), moves to the argmax of mu over the
/// neighborhood (ties: lexicographically smallest set). On return S is an
/// (r, zeta)-local maximum.
///
/// Throws DomainError when mu(S0) <= 0 and IncompleteSearchError when the
/// iteration cap is reached.
SearchResult local_search(const SetDistribution& mu, std::span<const int> s0,
                          const SearchConfig& cfg);

/// True when no T in N_r(S) has mu(T) > mu(S) / zeta.
bool is_local_max(const SetDistribution& mu, std::span<const int> s, int r, double zeta);

enum class InitMethod { kInduced, kStandard };

struct MapReport {
  IndexSet set;
  double value = 0.0;
  InitMethod init = InitMethod::kInduced;
  GreedyTrace greedy;
  SearchTrace search;
  int iterations = 0;
  double seconds = 0.0;
};

/// Greedy initialization followed by r-local search with mu(S) = det(L_S).
/// Requires an nPSD kernel.
MapReport map_inference(const Kernel& k, int subset_size, const SearchConfig& cfg,
                        InitMethod init = InitMethod::kInduced);

}  // namespace ndpp
