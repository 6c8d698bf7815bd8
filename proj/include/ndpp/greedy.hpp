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

#include <vector>

#include "ndpp/distribution.hpp"
#include "ndpp/kernel.hpp"

namespace ndpp {

struct GreedyPick {
  int index = -1;
  double marginal = 0.0;
};

struct GreedyTrace {
  std::vector<GreedyPick> picks;
  IndexSet final_set;
  double final_value = 0.0;
};

/// Builds S one element at a time, each time adding an i that maximizes the
/// superset marginal mu(S + i). With zeta_g < 1 the smallest index whose
/// marginal is within a factor zeta_g of the best is taken instead. Ties go
/// to the smallest index. The result satisfies C(n,k) mu(S) >= max mu.
///
/// Throws InfeasibleError when every extension has zero marginal.
GreedyTrace induced_greedy(const SetDistribution& mu, double zeta_g = 1.0);

/// Marginals within this relative distance of the cutoff count as ties.
inline constexpr double kTieTolerance = 1e-10;

/// The classic baseline: add the i maximizing det(L_{S+i}). May end on a
/// zero-determinant set for nonsymmetric kernels.
GreedyTrace standard_greedy(const Kernel& k, int subset_size);

}  // namespace ndpp
