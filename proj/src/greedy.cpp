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

#include "ndpp/greedy.hpp"

#include <algorithm>

#include "ndpp/error.hpp"

namespace ndpp {

GreedyTrace induced_greedy(const SetDistribution& mu, double zeta_g) {
  if (!(zeta_g > 0.0 && zeta_g <= 1.0)) throw DomainError("zeta_g must lie in (0, 1]");
  const int n = mu.ground_size();
  const int k = mu.subset_size();
  GreedyTrace trace;
  IndexSet current;
  std::vector<double> marginals(static_cast<std::size_t>(n));
  for (int step = 0; step < k; ++step) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      if (std::binary_search(current.begin(), current.end(), i)) {
        marginals[i] = -1.0;
        continue;
      }
      IndexSet candidate = current;
      candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), i), i);
      marginals[i] = mu.marginal(candidate);
      best = std::max(best, marginals[i]);
    }
    if (best <= 0.0) {
      throw InfeasibleError("induced greedy: every extension of " + to_string(current) +
                            " has zero mass");
    }
    // zeta_g == 1 reduces to the first index attaining the maximum up to
    // rounding in the computed marginals.
    const double cutoff = zeta_g * best * (1.0 - kTieTolerance);
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (marginals[i] >= 0.0 && marginals[i] >= cutoff) {
        pick = i;
        break;
      }
    }
    trace.picks.push_back({pick, marginals[pick]});
    current.insert(std::upper_bound(current.begin(), current.end(), pick), pick);
  }
  trace.final_set = current;
  trace.final_value = mu.value(current);
  return trace;
}

GreedyTrace standard_greedy(const Kernel& k, int subset_size) {
  if (subset_size < 0 || subset_size > k.n()) throw DomainError("need 0 <= k <= n");
  GreedyTrace trace;
  IndexSet current;
  for (int step = 0; step < subset_size; ++step) {
    const double thr = zero_threshold(k, step + 1);
    int pick = -1;
    double best = 0.0;
    for (int i = 0; i < k.n(); ++i) {
      if (std::binary_search(current.begin(), current.end(), i)) continue;
      IndexSet candidate = current;
      candidate.insert(std::upper_bound(candidate.begin(), candidate.end(), i), i);
      const double v = snap_to_zero(principal_minor(k, candidate), thr);
      if (pick < 0 || v > best) {
        pick = i;
        best = v;
      }
    }
    trace.picks.push_back({pick, best});
    current.insert(std::upper_bound(current.begin(), current.end(), pick), pick);
  }
  trace.final_set = current;
  trace.final_value = snap_to_zero(principal_minor(k, current), zero_threshold(k, subset_size));
  return trace;
}

}  // namespace ndpp
