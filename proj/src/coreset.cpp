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

#include "ndpp/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ndpp/error.hpp"
#include "ndpp/greedy.hpp"
#include "ndpp/localsearch.hpp"
#include "ndpp/parallel.hpp"
#include "ndpp/random.hpp"

namespace ndpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool subset_of(std::span<const int> a, std::span<const int> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Distribution over local indices [0, |part|): a principal sub-kernel when the
// base is a kernel DPP, otherwise a re-indexing view.
std::unique_ptr<SetDistribution> restrict_to(const SetDistribution& mu,
                                             const IndexSet& part) {
  if (const auto* kd = dynamic_cast<const KernelDistribution*>(&mu)) {
    return std::make_unique<KernelDistribution>(Kernel(kd->kernel().principal(part)),
                                                kd->subset_size(), kd->route());
  }
  return std::make_unique<RestrictedDistribution>(mu, part);
}

IndexSet to_global(const IndexSet& part, std::span<const int> local) {
  IndexSet out;
  out.reserve(local.size());
  for (int i : local) out.push_back(part[i]);
  return out;
}

MapOptimum optimum_over(const SetDistribution& mu, const IndexSet& pool) {
  if (static_cast<int>(pool.size()) < mu.subset_size()) {
    throw InfeasibleError("pool has fewer than k elements");
  }
  const RestrictedDistribution view(mu, pool);
  MapOptimum local = brute_force_map(view);
  local.set = view.to_global(local.set);
  return local;
}

}  // namespace

std::vector<IndexSet> random_partition(std::span<const int> ground, int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("partition needs at least one part");
  IndexSet order = normalized(ground);
  if (order.size() != ground.size()) throw DomainError("partition ground set has duplicates");
  Rng rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<IndexSet> parts(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < order.size(); ++i) parts[i % m].push_back(order[i]);
  for (auto& p : parts) std::sort(p.begin(), p.end());
  return parts;
}

IndexSet coreset_map(const SetDistribution& mu, std::span<const int> part_in, double zeta) {
  check_index_set(part_in, mu.ground_size());
  const IndexSet part = normalized(part_in);
  const int k = mu.subset_size();
  if (static_cast<int>(part.size()) < k) throw InfeasibleError("part has fewer than k elements");
  if (static_cast<int>(part.size()) == k) {
    if (!(mu.value(part) > 0.0)) throw InfeasibleError("part has no positive-mass k-subset");
    return part;
  }
  const auto local = restrict_to(mu, part);
  const GreedyTrace g = induced_greedy(*local);
  SearchConfig cfg;
  cfg.r = 1;
  cfg.zeta = zeta;
  cfg.validate(k);
  const SearchResult res = local_search(*local, g.final_set, cfg);
  return to_global(part, res.set);
}

PartitionPlan make_plan(const SetDistribution& mu, std::vector<IndexSet> parts, double zeta) {
  PartitionPlan plan;
  plan.zeta = zeta;
  for (auto& p : parts) p = normalized(p);
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      if (!set_intersection(parts[a], parts[b]).empty()) {
        throw DomainError("partition parts must be disjoint");
      }
    }
  }
  plan.parts = std::move(parts);
  plan.coresets.resize(plan.parts.size());
  std::vector<char> certified(plan.parts.size(), 0);
  parallel_for(plan.parts.size(), [&](std::size_t i) {
    plan.coresets[i] = coreset_map(mu, plan.parts[i], zeta);
    const RestrictedDistribution view(mu, plan.parts[i]);
    IndexSet local;
    for (int g : plan.coresets[i]) {
      local.push_back(static_cast<int>(
          std::lower_bound(plan.parts[i].begin(), plan.parts[i].end(), g) -
          plan.parts[i].begin()));
    }
    certified[i] = is_local_max(view, local, 1, zeta) ? 1 : 0;
  });
  plan.certified.assign(certified.begin(), certified.end());
  for (const auto& c : plan.coresets) plan.merged = set_union(plan.merged, c);
  return plan;
}

CoresetReport compose_and_report(const SetDistribution& mu, const PartitionPlan& plan) {
  const int k = mu.subset_size();
  CoresetReport rep;
  rep.plan = plan;
  IndexSet ground;
  for (const auto& p : plan.parts) ground = set_union(ground, p);
  rep.opt_union = optimum_over(mu, ground);
  rep.opt_coreset = optimum_over(mu, plan.merged);
  rep.ratio = rep.opt_coreset.value > 0.0 ? rep.opt_union.value / rep.opt_coreset.value : kInf;

  // Replay: while W leaves C, swap some j in (W & P_i) \ C_i for some
  // e in C_i \ W, choosing the pair that loses the least mass.
  IndexSet w = rep.opt_union.set;
  double w_value = rep.opt_union.value;
  double beta_hat = 1.0;
  bool steps_ok = true;
  while (!subset_of(w, plan.merged) && static_cast<int>(rep.chain.size()) <= k) {
    ChainStep best;
    best.factor = kInf;
    bool found = false;
    for (std::size_t i = 0; i < plan.parts.size(); ++i) {
      const IndexSet js = set_difference(set_intersection(w, plan.parts[i]), plan.coresets[i]);
      if (js.empty()) continue;
      const ExchangeReport ex = check_strong_basis_exchange(mu, plan.coresets[i], w, js);
      const IndexSet es = set_difference(plan.coresets[i], w);
      for (int j : js) {
        for (int e : es) {
          IndexSet next = w;
          std::erase(next, j);
          next.insert(std::upper_bound(next.begin(), next.end(), e), e);
          const double v = mu.value(next);
          const double factor = v > 0.0 ? w_value / v : kInf;
          if (!found || factor < best.factor) {
            found = true;
            best = {static_cast<int>(i), j, e, next, v, factor, ex.measured_beta};
          }
        }
      }
      // Only the first part with work to do contributes a step.
      if (found) break;
    }
    if (!found) {
      steps_ok = false;
      break;
    }
    beta_hat = std::max(beta_hat, best.step_beta);
    const std::size_t before = set_difference(w, plan.merged).size();
    w = best.set;
    w_value = best.value;
    if (set_difference(w, plan.merged).size() + 1 != before) steps_ok = false;
    rep.chain.push_back(std::move(best));
  }
  rep.beta_hat = beta_hat;
  rep.bound = std::pow(beta_hat / plan.zeta, k);
  const double slack = 1.0 + 1e-9;
  rep.bound_ok = rep.ratio <= rep.bound * slack;
  for (const auto& step : rep.chain) {
    if (!(step.factor <= beta_hat / plan.zeta * slack)) steps_ok = false;
  }
  rep.chain_ok = steps_ok && subset_of(w, plan.merged) && static_cast<int>(rep.chain.size()) <= k;
  return rep;
}

}  // namespace ndpp
