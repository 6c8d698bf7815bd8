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
#include "ndpp/exchange.hpp"

namespace ndpp {

/// Seeded balanced split of `ground` into m parts (sizes differ by at most
/// one); each part is sorted.
std::vector<IndexSet> random_partition(std::span<const int> ground, int m, std::uint64_t seed);

/// A (1, zeta)-local maximum of mu among the k-subsets of `part`, found by
/// induced greedy followed by single-swap local search inside the part.
/// Returns global indices. Throws InfeasibleError when no k-subset of the
/// part has positive mass.
IndexSet coreset_map(const SetDistribution& mu, std::span<const int> part, double zeta);

struct PartitionPlan {
  std::vector<IndexSet> parts;
  std::vector<IndexSet> coresets;  // one k-set per part
  std::vector<bool> certified;     // coreset i is a (1, zeta)-local max in part i
  IndexSet merged;                 // union of the core-sets
  double zeta = 0.5;
};

/// Computes every part's core-set (concurrently) and their union.
PartitionPlan make_plan(const SetDistribution& mu, std::vector<IndexSet> parts, double zeta);

/// One swap W -> W - j + e of the exchange chain from the optimum over the
/// union of the parts into the merged core-set.
struct ChainStep {
  int part = 0;
  int removed = 0;   // j in (W & P_i) \ C_i
  int added = 0;     // e in C_i \ W
  IndexSet set;      // W after the swap
  double value = 0.0;
  double factor = 0.0;       // mu(W before) / mu(W after)
  double step_beta = 0.0;    // strong-basis beta of (C_i, W) over j in P_i
};

struct CoresetReport {
  PartitionPlan plan;
  MapOptimum opt_union;
  MapOptimum opt_coreset;
  double ratio = 0.0;     // opt_union / opt_coreset
  double beta_hat = 1.0;  // max(1, max step_beta)
  double bound = 0.0;     // (beta_hat / zeta)^k
  bool bound_ok = false;
  std::vector<ChainStep> chain;
  /// Every step lies within beta_hat / zeta, |W \ C| drops by one per step,
  /// there are at most k steps, and the final W is inside C.
  bool chain_ok = false;
};

/// Brute-forces the optimum over the union of parts and over the merged
/// core-set, then replays the exchange chain. Throws CapacityError when
/// either brute force is too large.
CoresetReport compose_and_report(const SetDistribution& mu, const PartitionPlan& plan);

}  // namespace ndpp
