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

#include "ndpp/error.hpp"
#include "ndpp/exchange.hpp"
#include "ndpp/instances.hpp"
#include "oracles.hpp"

using namespace ndpp;

TEST_CASE("brute_force_map examples") {
  const auto id = brute_force_map(KernelDistribution(identity_kernel(3), 2));
  CHECK(id.set == IndexSet{0, 1});
  CHECK(id.value == doctest::Approx(1.0));

  const auto d = brute_force_map(KernelDistribution(diagonal_kernel({1, 2, 3}), 2));
  CHECK(d.set == IndexSet{1, 2});
  CHECK(d.value == doctest::Approx(6.0));

  const auto sb = brute_force_map(KernelDistribution(skew_block({4, 3, 2}, {100, 200, 300}), 2));
  CHECK(sb.set == IndexSet{4, 5});
  CHECK(sb.value == doctest::Approx(2.0 * 2.0 + 300.0 * 300.0));

  CHECK_THROWS_AS(brute_force_map(uniform_distribution(40, 10)), CapacityError);
}

TEST_CASE("r_exchanges have the right shape") {
  const IndexSet s{0, 1, 2}, t{2, 3, 4};
  const auto e1 = r_exchanges(s, t, 1);
  CHECK(e1.size() == 4);
  const auto e2 = r_exchanges(s, t, 2);
  CHECK(e2.size() == 1);
  CHECK(e2[0] == IndexSet{0, 1, 3, 4});
  for (const auto& u : e1) {
    CHECK(set_intersection(u, s).size() == 1);
    CHECK(set_intersection(u, t).size() == 1);
  }
}

TEST_CASE("pair exchange examples") {
  const KernelDistribution mu(random_npsd(6, 0, 1), 3);
  const auto same = check_pair_exchange(mu, IndexSet{0, 1, 2}, IndexSet{0, 1, 2}, 2);
  CHECK(same.vacuous);
  CHECK(same.passed);
  CHECK(same.distance == 0);

  const auto one = check_pair_exchange(mu, IndexSet{0, 1, 2}, IndexSet{0, 1, 4}, 2);
  CHECK(one.distance == 1);
  CHECK(one.measured_beta == doctest::Approx(1.0));
  CHECK(one.passed);
  REQUIRE(one.witnesses.size() == 2);
  CHECK(one.witnesses[0].u == IndexSet{2, 4});
}

TEST_CASE("pair exchange holds at beta = k^4 on all pairs, n = 8, k = 3") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const KernelDistribution base(random_npsd(8, 0, seed), 3);
    const TabulatedDistribution mu(base);
    const auto sets = all_subsets(8, 3);
    int failures = 0;
    for (const auto& s : sets) {
      for (const auto& t : sets) {
        const auto rep = check_pair_exchange(mu, s, t, 2);
        if (!rep.passed) ++failures;
        for (const auto& w : rep.witnesses) {
          CHECK(static_cast<int>(set_intersection(w.u, s).size()) == w.s);
          CHECK(static_cast<int>(set_intersection(w.u, t).size()) == w.s);
        }
      }
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("zero maxima with positive product fail with infinite beta") {
  // mu is positive on S and T only.
  const IndexSet s{0, 1}, t{2, 3};
  const FunctionDistribution mu(4, 2, [&](std::span<const int> x) {
    const IndexSet v(x.begin(), x.end());
    return (v == s || v == t) ? 1.0 : 0.0;
  });
  const auto rep = check_pair_exchange(mu, s, t, 1);
  CHECK_FALSE(rep.passed);
  CHECK(std::isinf(rep.measured_beta));
  // Radius two reaches T itself.
  CHECK(check_pair_exchange(mu, s, t, 2).passed);
}

TEST_CASE("symmetric PSD kernels pass at radius one with beta <= k^2") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const KernelDistribution base(random_sym_psd(7, 0, seed), 3);
    const TabulatedDistribution mu(base);
    const auto sets = all_subsets(7, 3);
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        CHECK(check_pair_exchange(mu, sets[a], sets[b], 1, 9.0).passed);
      }
    }
  }
}

TEST_CASE("weak exchange examples") {
  const KernelDistribution mu(random_npsd(8, 0, 4), 3);
  // d(S,T) <= r: U = S delta T gives beta = 1.
  const auto close = check_weak_exchange(mu, IndexSet{0, 1, 2}, IndexSet{0, 3, 4}, 2);
  CHECK(close.measured_beta <= 1.0 + 1e-12);

  const auto uni = uniform_distribution(6, 3);
  const auto u = check_weak_exchange(uni, IndexSet{0, 1, 2}, IndexSet{3, 4, 5}, 1);
  CHECK(u.measured_beta == doctest::Approx(1.0));

  const TabulatedDistribution tab(mu);
  const auto sets = all_subsets(8, 3);
  for (std::size_t a = 0; a < sets.size(); a += 3) {
    for (std::size_t b = 0; b < sets.size(); b += 5) {
      if (a == b || !(tab.value(sets[b]) > 0.0)) continue;
      CHECK(std::isfinite(check_weak_exchange(tab, sets[a], sets[b], 2).measured_beta));
    }
  }
  CHECK_THROWS_AS(check_weak_exchange(mu, IndexSet{0, 1, 2}, IndexSet{0, 1, 2}, 1), DomainError);
  Matrix z = Matrix::Identity(4, 4);
  z(3, 3) = 0.0;
  const KernelDistribution zero_t(Kernel(z), 2);
  CHECK_THROWS_AS(check_weak_exchange(zero_t, IndexSet{0, 1}, IndexSet{2, 3}, 1), DomainError);
}

TEST_CASE("strong basis exchange examples") {
  const KernelDistribution diag(diagonal_kernel({1.5, 2, 3, 4, 5, 6}), 3);
  const auto d = check_strong_basis_exchange(diag, IndexSet{0, 1, 2}, IndexSet{3, 4, 5});
  CHECK(d.measured_beta == doctest::Approx(1.0));
  CHECK(d.witnesses.size() == 3);

  const auto same = check_strong_basis_exchange(diag, IndexSet{0, 1, 2}, IndexSet{0, 1, 2});
  CHECK(same.vacuous);
  CHECK(same.passed);

  // Rank-3 orthogonal projection: a symmetric, matroid-like kernel.
  const Kernel g = random_sym_psd(7, 3, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(g.entries()));
  const Eigen::MatrixXd v = es.eigenvectors().rightCols(3);
  const KernelDistribution proj(Kernel(Matrix(v * v.transpose())), 3);
  const TabulatedDistribution tab(proj);
  const auto sets = all_subsets(7, 3);
  for (const auto& s : sets) {
    for (const auto& t : sets) {
      if (!(tab.value(s) > 0.0 && tab.value(t) > 0.0)) continue;
      const auto rep = check_strong_basis_exchange(tab, s, t);
      CHECK(std::isfinite(rep.measured_beta));
    }
  }
}

TEST_CASE("exchange polynomial examples") {
  const auto uni = uniform_distribution(4, 2);
  const auto b = exchange_polynomial(uni, IndexSet{0, 1}, IndexSet{2, 3});
  CHECK(b.coeffs == std::vector<double>{1, 0, 4, 0, 1});

  const KernelDistribution mu(random_npsd(6, 0, 2), 3);
  const auto t1 = exchange_polynomial(mu, IndexSet{0, 1, 2}, IndexSet{0, 1, 3});
  REQUIRE(t1.degree() == 2);
  CHECK(t1.coeff(0) == doctest::Approx(mu.value(IndexSet{0, 1, 3})));
  CHECK(t1.coeff(1) == 0.0);
  CHECK(t1.coeff(2) == doctest::Approx(mu.value(IndexSet{0, 1, 2})));

  // Disjoint S, T with t = 3: enumerate every W inside S | T directly.
  const IndexSet s{0, 1, 2}, t{3, 4, 5};
  const auto poly = exchange_polynomial(mu, s, t);
  REQUIRE(poly.degree() == 6);
  std::vector<double> ref(7, 0.0);
  const Matrix& l = mu.kernel().entries();
  for (const auto& w : oracle::subsets(6, 3)) {
    int in_s = 0;
    for (int x : w) in_s += x < 3 ? 1 : 0;
    ref[2 * in_s] += oracle::minor_det(l, w);
  }
  for (int i = 0; i <= 6; ++i) {
    CHECK(oracle::close_rel(poly.coeff(i), ref[i], 1e-9, zero_threshold(mu.kernel(), 3)));
  }
}

TEST_CASE("hurwitz coefficient check") {
  CHECK(hurwitz_coeff_check(PolyCoeffs{{1, 3, 3, 1}}, false));
  CHECK(hurwitz_coeff_check(PolyCoeffs{{5, 0, 1}}, false));
  CHECK(hurwitz_coeff_check(PolyCoeffs{{100, 0.001}}, false));
  CHECK_FALSE(hurwitz_coeff_check(PolyCoeffs{{10, 1, 1, 10}}, false));
  CHECK_THROWS_AS(hurwitz_coeff_check(PolyCoeffs{{1, -1, 1}}, false), DomainError);
  // The even form reads a_0, a_2, a_4, ...
  CHECK(hurwitz_coeff_check(PolyCoeffs{{1, 0, 3, 0, 3, 0, 1}}, true));
  CHECK_FALSE(hurwitz_coeff_check(PolyCoeffs{{10, 0, 1, 0, 1, 0, 10}}, true));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const KernelDistribution mu(random_npsd(8, 0, seed), 4);
    const auto p = exchange_polynomial(mu, IndexSet{0, 1, 2, 3}, IndexSet{4, 5, 6, 7});
    CHECK(hurwitz_coeff_check(p, true));
  }
}

TEST_CASE("hurwitz matrix") {
  const auto h = hurwitz_matrix(PolyCoeffs{{1, 2, 1}});  // z^2 + 2z + 1
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 0) == 2.0);  // a_1
  CHECK(h(0, 1) == 0.0);  // a_3 is out of range
  CHECK(h(1, 0) == 1.0);  // a_0
  CHECK(h(1, 1) == 1.0);  // a_2

  const PolyCoeffs p{{0.5, 1.5, 2.5, 3.5, 4.5}};
  const auto hp = hurwitz_matrix(p);
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      const int idx = 2 * j - i;
      CHECK(hp(i - 1, j - 1) == ((idx >= 0 && idx <= 4) ? p.coeff(idx) : 0.0));
    }
  }

  const auto zero = hurwitz_matrix(PolyCoeffs{{0, 0, 0, 0}});
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

  // Products of (z + a_i) with a_i > 0: every 2 x 2 minor is nonnegative.
  const std::vector<std::vector<std::complex<double>>> cases = {
      {-1.0, -2.0, -3.0}, {-0.5, -0.5, -4.0, -7.0}, {-0.1, -10.0, -2.0, -3.0, -5.0}};
  for (const auto& roots : cases) {
    const auto c = oracle::expand_roots(roots);
    PolyCoeffs poly;
    for (const auto& v : c) poly.coeffs.push_back(v.real());
    const auto hm = hurwitz_matrix(poly);
    CHECK(min_two_by_two_minor(hm) >= -1e-9 * hm.cwiseAbs().maxCoeff() * hm.cwiseAbs().maxCoeff());
  }
}
