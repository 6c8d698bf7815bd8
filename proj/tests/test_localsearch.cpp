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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ndpp/error.hpp"
#include "ndpp/instances.hpp"
#include "ndpp/localsearch.hpp"
#include "oracles.hpp"

using namespace ndpp;

TEST_CASE("neighborhood examples") {
  auto n1 = neighborhood(IndexSet{0, 1}, 1, 4);
  std::sort(n1.begin(), n1.end());
  CHECK(n1 == std::vector<IndexSet>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(neighborhood(IndexSet{0, 2, 4}, 3, 6).size() == binomial(6, 3));
  CHECK(neighborhood(IndexSet{0, 1, 2}, 2, 6).size() == 19);
  for (int r = 1; r <= 3; ++r) {
    const auto nb = neighborhood(IndexSet{1, 3, 5}, r, 7);
    CHECK(nb.size() == neighborhood_size(7, 3, r));
    const std::set<IndexSet> unique(nb.begin(), nb.end());
    CHECK(unique.size() == nb.size());
    for (const auto& t : nb) CHECK(swap_distance(IndexSet{1, 3, 5}, t) <= r);
  }
}

TEST_CASE("KernelDistribution neighborhood scan matches direct minors") {
  const Kernel k = random_npsd(8, 0, 6);
  const KernelDistribution mu(k, 3);
  const IndexSet s{1, 4, 6};
  std::vector<IndexSet> order;
  const auto evals = mu.scan_neighborhood(s, 2, [&](std::span<const int> t, double v) {
    order.emplace_back(t.begin(), t.end());
    CHECK(oracle::close_rel(v, principal_minor(k, t), 1e-8, zero_threshold(k, 3)));
  });
  CHECK(order == neighborhood(s, 2, 8));
  CHECK(evals <= neighborhood_size(8, 3, 2));
}

TEST_CASE("local search from the optimum takes no steps") {
  const Kernel k = random_npsd(7, 0, 2);
  const KernelDistribution mu(k, 3);
  const auto best = oracle::brute_max(k.entries(), 3);
  const auto res = local_search(mu, best.set, SearchConfig{});
  CHECK(res.set == best.set);
  CHECK(res.trace.steps.empty());
  CHECK(res.trace.certified_local_max);
}

TEST_CASE("block example: radius one is stuck, radius two escapes") {
  const Kernel k = skew_block({4, 3, 2}, {100, 200, 300});
  const KernelDistribution mu(k, 2);
  SearchConfig r1;
  r1.r = 1;
  const auto stuck = local_search(mu, IndexSet{0, 1}, r1);
  CHECK(stuck.set == IndexSet{0, 1});
  CHECK(stuck.trace.steps.empty());
  CHECK(is_local_max(mu, IndexSet{0, 1}, 1, 0.5));

  const auto free = local_search(mu, IndexSet{0, 1}, SearchConfig{});
  CHECK(free.set == IndexSet{4, 5});
  CHECK(free.value == doctest::Approx(90004.0));
  CHECK(free.set == oracle::brute_max(k.entries(), 2).set);
}

TEST_CASE("local search preconditions and configuration") {
  Matrix skew = Matrix::Zero(4, 4);
  skew(0, 1) = 1.0;
  skew(1, 0) = -1.0;
  skew(2, 3) = 2.0;
  skew(3, 2) = -2.0;
  const KernelDistribution mu(Kernel(skew), 2);
  CHECK_THROWS_AS(local_search(mu, IndexSet{0, 2}, SearchConfig{}), DomainError);
  CHECK(local_search(mu, IndexSet{0, 1}, SearchConfig{}).set == IndexSet{2, 3});

  SearchConfig bad;
  bad.r = 3;
  CHECK_THROWS_AS(bad.validate(2), DomainError);
  bad.r = 5;
  CHECK_THROWS_AS(bad.validate(6), DomainError);
  SearchConfig z;
  z.zeta = 1.0;
  CHECK_THROWS_AS(z.validate(3), DomainError);
  z.zeta = 0.0;
  CHECK_THROWS_AS(z.validate(3), DomainError);
}

TEST_CASE("the iteration cap raises with the best set so far") {
  // From {0,1}, single swaps need two moves: {1,4} (32) and then {3,4} (128).
  const KernelDistribution mu(diagonal_kernel({1, 2, 4, 8, 16}), 2);
  SearchConfig cfg;
  cfg.r = 1;
  cfg.max_iters = 1;
  try {
    local_search(mu, IndexSet{0, 1}, cfg);
    FAIL("expected IncompleteSearchError");
  } catch (const IncompleteSearchError& e) {
    CHECK(e.best() == std::vector<int>{1, 4});
    CHECK(e.value() == doctest::Approx(32.0));
  }
  cfg.max_iters = 2;
  CHECK(local_search(mu, IndexSet{0, 1}, cfg).set == IndexSet{3, 4});
}

TEST_CASE("step bound and certification on random instances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Kernel k = random_npsd(8, 0, seed);
    const KernelDistribution mu(k, 3);
    const auto g = induced_greedy(mu);
    SearchConfig cfg;
    const auto res = local_search(mu, g.final_set, cfg);
    const auto best = oracle::brute_max(k.entries(), 3);
    const double bound = std::log(best.value / g.final_value) / std::log(1.0 / cfg.zeta);
    CHECK(static_cast<double>(res.trace.steps.size()) <= bound + 1e-9);
    CHECK(res.trace.certified_local_max);
    CHECK(is_local_max(mu, res.set, 2, cfg.zeta));
    double prev = g.final_value;
    for (const auto& st : res.trace.steps) {
      CHECK(st.value * cfg.zeta > prev);
      prev = st.value;
    }
  }
}

TEST_CASE("map_inference examples") {
  const auto id = map_inference(identity_kernel(5), 2, SearchConfig{});
  CHECK(id.value == doctest::Approx(1.0));

  const Kernel sb = skew_block({4, 3, 2}, {100, 200, 300});
  const auto rep = map_inference(sb, 2, SearchConfig{});
  CHECK(rep.set == IndexSet{4, 5});

  SearchConfig r1;
  r1.r = 1;
  const auto stuck = map_inference(sb, 2, r1, InitMethod::kStandard);
  CHECK(stuck.set == IndexSet{0, 1});
  CHECK(stuck.value == doctest::Approx(10016.0));

  Matrix bad(2, 2);
  bad << 0, 2, 0, 0;
  CHECK_THROWS_AS(map_inference(Kernel(bad), 1, r1), DomainError);
}

TEST_CASE("local-to-global bound on a seeded n = 10, k = 3 batch") {
  double worst = 0.0;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Kernel k = random_npsd(10, 0, seed);
    const auto rep = map_inference(k, 3, SearchConfig{});
    const auto best = oracle::brute_max(k.entries(), 3);
    const double ratio = best.value / rep.value;
    CHECK(ratio <= std::pow(81.0 / 0.5, 3));
    worst = std::max(worst, ratio);
  }
  CHECK(worst <= 10.0);
}
