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

#include <cmath>
#include <limits>

#include "ndpp/downup.hpp"
#include "ndpp/error.hpp"
#include "ndpp/instances.hpp"
#include "ndpp/random.hpp"
#include "oracles.hpp"

using namespace ndpp;

namespace {

ChainMatrix two_state(double p, double q) {
  ChainMatrix c;
  c.states = {{0}, {1}};
  c.p = Matrix(2, 2);
  c.p << 1 - p, p, q, 1 - q;
  c.pi = {q / (p + q), p / (p + q)};
  return c;
}

}  // namespace

TEST_CASE("apply_field examples") {
  const Kernel k = random_npsd(6, 0, 3);
  const KernelDistribution mu(k, 3);
  const FieldDistribution ones(mu, FieldVector(6, 1.0));
  for (const auto& s : all_subsets(6, 3)) CHECK(ones.value(s) == mu.value(s));

  FieldVector drop(6, 1.0);
  drop[0] = 0.0;
  const FieldDistribution without(mu, drop);
  for (const auto& s : all_subsets(6, 3)) {
    if (s.front() == 0) CHECK(without.value(s) == 0.0);
  }

  Rng rng(5);
  FieldVector lam(6);
  for (double& w : lam) w = rng.uniform(0.2, 3.0);
  const FieldDistribution tilted(mu, lam);
  for (const auto& s : all_subsets(6, 3)) {
    double prod = 1.0;
    for (int i : s) prod *= lam[i];
    CHECK(oracle::close_rel(tilted.value(s), mu.value(s) * prod, 1e-15));
  }

  FieldVector force(6, 1.0);
  force[2] = std::numeric_limits<double>::infinity();
  const FieldDistribution forced(mu, force);
  for (const auto& s : all_subsets(6, 3)) {
    const bool has2 = std::find(s.begin(), s.end(), 2) != s.end();
    CHECK(forced.value(s) == (has2 ? mu.value(s) : 0.0));
  }

  CHECK_THROWS_AS(FieldDistribution(mu, FieldVector(6, 0.0)), InfeasibleError);
  CHECK_THROWS_AS(FieldDistribution(mu, FieldVector(5, 1.0)), DomainError);
  FieldVector neg(6, 1.0);
  neg[1] = -1.0;
  CHECK_THROWS_AS(FieldDistribution(mu, neg), DomainError);
}

TEST_CASE("down-up on three states by hand") {
  const auto uni = uniform_distribution(3, 2);
  const ChainMatrix c = build_downup(uni, 1);
  REQUIRE(c.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(c.p(i, j) == doctest::Approx(i == j ? 0.5 : 0.25));
    }
    CHECK(c.pi[i] == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("k = l gives the identity chain with zero gap") {
  const ChainMatrix c = build_downup(uniform_distribution(4, 2), 2);
  CHECK((c.p - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::fabs(spectral_gap(c)) <= 1e-12);
}

TEST_CASE("down-up transition entries match the defining sum") {
  const Kernel k = random_npsd(6, 0, 8);
  const KernelDistribution mu(k, 3);
  const ChainMatrix c = build_downup(mu, 1);
  // Direct evaluation of (1/C(k,l)) sum_{T <= S & S'} mu(S') / Z(T).
  for (std::size_t a = 0; a < c.size(); a += 4) {
    for (std::size_t b = 0; b < c.size(); ++b) {
      double expect = 0.0;
      for (int t : set_intersection(c.states[a], c.states[b])) {
        double z = 0.0;
        for (const auto& w : all_subsets(6, 3)) {
          if (std::find(w.begin(), w.end(), t) != w.end()) z += mu.value(w);
        }
        expect += mu.value(c.states[b]) / z / 3.0;
      }
      CHECK(std::fabs(c.p(a, b) - expect) <= 1e-13);
    }
  }
}

TEST_CASE("chain invariants on an nPSD kernel") {
  const KernelDistribution mu(random_npsd(6, 0, 2), 3);
  for (int l : {1, 2}) {
    const ChainMatrix c = build_downup(mu, l);
    const ChainDiagnostics d = diagnose(c);
    CHECK(d.row_sum_error <= 1e-12);
    CHECK(d.reversibility_error <= 1e-10);
    CHECK(d.stationarity_error <= 1e-10);
    CHECK(d.min_eigenvalue >= -1e-9);
    CHECK(d.max_imag_part <= 1e-7);
    CHECK(d.gap > 0.0);
    CHECK(std::fabs(d.gap - d.gap_crosscheck) <= 1e-8);
  }
}

TEST_CASE("spectral gap examples") {
  const auto c = two_state(0.3, 0.2);
  CHECK(spectral_gap(c) == doctest::Approx(0.5));
  const ChainMatrix u = build_downup(uniform_distribution(4, 2), 1);
  const auto ev = chain_eigenvalues(u);
  CHECK(spectral_gap(u) == doctest::Approx(1.0 - ev[1].real()));
  CHECK(spectral_gap(u) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("conductance examples") {
  const auto sym = two_state(0.5, 0.5);
  const auto phi = conductance(sym);
  CHECK(phi.exact);
  CHECK(phi.value == doctest::Approx(0.5));
  CHECK(phi.cheeger_ok);

  // Two disconnected components: states {0,1} and {2,3} never mix.
  ChainMatrix split;
  split.states = {{0}, {1}, {2}, {3}};
  split.p = Matrix::Zero(4, 4);
  split.p.block(0, 0, 2, 2).setConstant(0.5);
  split.p.block(2, 2, 2, 2).setConstant(0.5);
  split.pi = {0.25, 0.25, 0.25, 0.25};
  const auto ps = conductance(split);
  CHECK(ps.value == doctest::Approx(0.0));
  CHECK(std::fabs(spectral_gap(split)) <= 1e-12);
  CHECK(ps.cheeger_ok);
}

TEST_CASE("exact conductance agrees with a plain subset scan") {
  const KernelDistribution mu(random_npsd(6, 0, 17), 2);
  const ChainMatrix c = build_downup(mu, 1);
  REQUIRE(c.size() <= 16);
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = c.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    double pa = 0.0, q = 0.0;
    for (std::size_t x = 0; x < m; ++x) {
      if (!(mask >> x & 1)) continue;
      pa += c.pi[x];
      for (std::size_t y = 0; y < m; ++y) {
        if (!(mask >> y & 1)) q += c.pi[x] * c.p(x, y);
      }
    }
    if (pa <= 0.5 + 1e-12) best = std::min(best, q / pa);
  }
  const auto phi = conductance(c);
  CHECK(phi.exact);
  CHECK(phi.value == doctest::Approx(best).epsilon(1e-10));
  CHECK(phi.cheeger_ok);
}

TEST_CASE("large chains get a Cheeger interval") {
  const KernelDistribution mu(random_npsd(7, 0, 3), 3);
  const ChainMatrix c = build_downup(mu, 2);
  REQUIRE(c.size() > kMaxExactConductanceStates);
  const auto phi = conductance(c);
  CHECK_FALSE(phi.exact);
  CHECK(phi.lower == doctest::Approx(phi.gap / 2));
  CHECK(phi.upper >= phi.lower);
}

TEST_CASE("capacity and support errors") {
  CHECK_THROWS_AS(build_downup(uniform_distribution(30, 4), 2), CapacityError);
  const FunctionDistribution zero(5, 2, [](std::span<const int>) { return 0.0; });
  CHECK_THROWS_AS(build_downup(zero, 1), InfeasibleError);
  CHECK_THROWS_AS(build_downup(uniform_distribution(5, 2), 3), DomainError);
}

TEST_CASE("tv_distance examples") {
  const std::vector<double> p{0.5, 0.5}, q{0.75, 0.25}, a{1, 0}, b{0, 1};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(a, b) == 1.0);
  CHECK(tv_distance(p, q) == doctest::Approx(0.25));
  CHECK_THROWS_AS(tv_distance(p, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("sampler basics") {
  const auto uni = uniform_distribution(5, 2);
  const auto still = sample_walk(uni, IndexSet{1, 3}, 2, 50, 1);
  for (const auto& s : still) CHECK(s == IndexSet{1, 3});

  const auto a = sample_walk(uni, IndexSet{0, 1}, 1, 500, 99);
  const auto b = sample_walk(uni, IndexSet{0, 1}, 1, 500, 99);
  CHECK(a == b);
  CHECK(a.size() == 501);

  const ChainMatrix c = build_downup(uni, 1);
  const auto traj = sample_walk(uni, IndexSet{0, 1}, 1, 100000, 7);
  CHECK(tv_distance(empirical_density(c, traj), c.pi) < 0.05);

  // Several seeds concurrently reproduce the sequential runs.
  const std::vector<std::uint64_t> seeds{3, 4};
  const auto many = sample_walks(uni, IndexSet{0, 1}, 1, 200, seeds);
  CHECK(many[0] == sample_walk(uni, IndexSet{0, 1}, 1, 200, 3));
  CHECK(many[1] == sample_walk(uni, IndexSet{0, 1}, 1, 200, 4));
}

TEST_CASE("sampler on an nPSD kernel converges to the exact stationary density") {
  const KernelDistribution mu(random_npsd(6, 0, 31), 3);
  const ChainMatrix c = build_downup(mu, 1);
  const auto top = std::max_element(c.pi.begin(), c.pi.end()) - c.pi.begin();
  const auto traj = sample_walk(mu, c.states[top], 1, 100000, 2024);
  CHECK(tv_distance(empirical_density(c, traj), c.pi) < 0.05);
}

TEST_CASE("sampler errors") {
  // mu lives on {0,1} and {2,3}; dropping to the empty set is fine, but a
  // walk with l = 1 from {0,1} keeping 1 can only return to {0,1}.
  const FunctionDistribution two(4, 2, [](std::span<const int> s) {
    return (s[0] == 0 && s[1] == 1) || (s[0] == 2 && s[1] == 3) ? 1.0 : 0.0;
  });
  CHECK_NOTHROW(sample_walk(two, IndexSet{0, 1}, 1, 20, 1));
  CHECK_THROWS_AS(sample_walk(two, IndexSet{0, 2}, 1, 20, 1), DomainError);

  // A zero-mass completion: mu(S) > 0 only for S0, and dropping to l = 1
  // leaves sets whose completions are all zero except S0 itself.
  const FunctionDistribution lone(4, 2, [](std::span<const int> s) {
    return (s[0] == 0 && s[1] == 1) ? 1.0 : 0.0;
  });
  const auto stay = sample_walk(lone, IndexSet{0, 1}, 1, 10, 1);
  for (const auto& s : stay) CHECK(s == IndexSet{0, 1});

  // A trapped up-step needs mu(S0) > 0 but nothing above some T <= S0;
  // that is impossible for T <= S0, so exercise the error on a view that
  // changes between the calls.
  int calls = 0;
  const FunctionDistribution flaky(3, 2, [&](std::span<const int>) {
    return ++calls == 1 ? 1.0 : 0.0;
  });
  try {
    sample_walk(flaky, IndexSet{0, 1}, 1, 1, 1);
    FAIL("expected TrappedStateError");
  } catch (const TrappedStateError& e) {
    CHECK(e.down_set().size() == 1);
  }
}

TEST_CASE("field commutation: the tilted chain is stationary at lambda * mu") {
  const KernelDistribution mu(random_npsd(6, 0, 13), 3);
  Rng rng(77);
  FieldVector lam(6);
  for (double& w : lam) w = std::exp(rng.uniform(-1, 1));
  const FieldDistribution tilted(mu, lam);
  const ChainMatrix c = build_downup(tilted, 1);
  double total = 0.0;
  std::vector<double> target;
  for (const auto& s : c.states) {
    double v = mu.value(s);
    for (int i : s) v *= lam[i];
    target.push_back(v);
    total += v;
  }
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::fabs(c.pi[i] - target[i] / total) <= 1e-12);
  CHECK(stationarity_error(c) <= 1e-10);
}
