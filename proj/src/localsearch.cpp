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

#include "ndpp/localsearch.hpp"

#include <chrono>
#include <cmath>

#include "ndpp/error.hpp"

namespace ndpp {

void SearchConfig::validate(int subset_size) const {
  if (r < 1 || r > 4) throw DomainError("swap radius r must be in [1, 4]");
  if (r > subset_size) throw DomainError("swap radius r must not exceed k");
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0, 1)");
  if (max_iters < 0) throw DomainError("max_iters must be nonnegative");
}

std::vector<IndexSet> neighborhood(std::span<const int> s, int r, int n) {
  check_index_set(s, n);
  const IndexSet sorted = normalized(s);
  std::vector<IndexSet> out;
  out.reserve(static_cast<std::size_t>(neighborhood_size(n, static_cast<int>(sorted.size()), r)));
  for_each_neighbor(sorted, r, n, [&](std::span<const int> t, auto, auto) {
    out.emplace_back(t.begin(), t.end());
  });
  return out;
}

int default_max_iters(const SetDistribution& mu) {
  const double growth = std::log2(1.0 + mu.scale_hint() * mu.ground_size());
  return static_cast<int>(64.0 * mu.subset_size() * (1.0 + growth));
}

namespace {

struct Best {
  IndexSet set;
  double value = -1.0;
};

Best scan_best(const SetDistribution& mu, std::span<const int> s, int r,
               std::uint64_t& evals) {
  Best best;
  evals += mu.scan_neighborhood(s, r, [&](std::span<const int> t, double v) {
    const bool better = v > best.value ||
                        (v == best.value &&
                         std::lexicographical_compare(t.begin(), t.end(), best.set.begin(),
                                                      best.set.end()));
    if (better) {
      best.value = v;
      best.set.assign(t.begin(), t.end());
    }
  });
  return best;
}

}  // namespace

SearchResult local_search(const SetDistribution& mu, std::span<const int> s0,
                          const SearchConfig& cfg) {
  const int k = mu.subset_size();
  cfg.validate(k);
  check_index_set(s0, mu.ground_size());
  if (static_cast<int>(s0.size()) != k) throw DomainError("start set has the wrong size");

  SearchResult result;
  result.set = normalized(s0);
  result.value = mu.value(result.set);
  if (!(result.value > 0.0)) {
    throw DomainError("local search needs mu(S0) > 0, got " + std::to_string(result.value));
  }
  result.trace.max_iters = cfg.max_iters > 0 ? cfg.max_iters : default_max_iters(mu);

  for (int iter = 0;; ++iter) {
    const Best best = scan_best(mu, result.set, cfg.r, result.trace.neighborhood_evals);
    if (!(result.value < cfg.zeta * best.value)) {
      result.trace.certified_local_max = true;
      return result;
    }
    if (iter >= result.trace.max_iters) {
      throw IncompleteSearchError("local search exceeded " +
                                      std::to_string(result.trace.max_iters) + " iterations",
                                  result.set, result.value);
    }
    result.trace.steps.push_back({best.set, best.value, best.value / result.value});
    result.set = best.set;
    result.value = best.value;
  }
}

bool is_local_max(const SetDistribution& mu, std::span<const int> s, int r, double zeta) {
  const double base = mu.value(s);
  bool ok = true;
  mu.scan_neighborhood(s, r, [&](std::span<const int>, double v) {
    if (base < zeta * v) ok = false;
  });
  return ok;
}

MapReport map_inference(const Kernel& k, int subset_size, const SearchConfig& cfg,
                        InitMethod init) {
  const auto start = std::chrono::steady_clock::now();
  if (subset_size < 1 || subset_size > k.n()) throw DomainError("need 1 <= k <= n");
  cfg.validate(subset_size);
  if (!is_npsd(k)) throw DomainError("kernel is not nonsymmetric PSD");

  const KernelDistribution mu(k, subset_size);
  MapReport report;
  report.init = init;
  report.greedy = init == InitMethod::kInduced ? induced_greedy(mu)
                                               : standard_greedy(k, subset_size);
  if (!(report.greedy.final_value > 0.0)) {
    throw InfeasibleError("greedy initialization ended on a zero-mass set " +
                          to_string(report.greedy.final_set));
  }
  SearchResult res = local_search(mu, report.greedy.final_set, cfg);
  report.set = std::move(res.set);
  report.value = res.value;
  report.search = std::move(res.trace);
  report.iterations = static_cast<int>(report.search.steps.size());
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace ndpp
