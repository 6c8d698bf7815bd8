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
#include <vector>

#include "ndpp/downup.hpp"
#include "ndpp/error.hpp"
#include "ndpp/instances.hpp"
#include "ndpp/random.hpp"
#include "ndpp/simd.hpp"

using namespace ndpp;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-3.0, 3.0);
  return v;
}

// Restores the process-wide backend when a test case ends.
struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_CASE("every supported backend agrees with the scalar reference") {
  const simd::Kernels& ref = simd::scalar_kernels();
  Rng rng(42);
  for (auto b : {simd::Backend::kScalar, simd::Backend::kAvx2, simd::Backend::kNeon}) {
    const simd::Kernels* k = simd::kernels_for(b);
    if (k == nullptr) {
      MESSAGE("backend " << simd::backend_name(b) << " not available on this host");
      continue;
    }
    // Lengths around the vector widths and unroll factors, including the tails.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 257u}) {
      const auto a = random_vector(n, rng);
      const auto c = random_vector(n, rng);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::fabs(a[i] * c[i]) + std::fabs(a[i]);
      const double tol = 1e-13 * (1.0 + mag);
      CHECK(std::fabs(k->dot(a.data(), c.data(), n) - ref.dot(a.data(), c.data(), n)) <= tol);
      CHECK(std::fabs(k->sum(a.data(), n) - ref.sum(a.data(), n)) <= tol);
      CHECK(std::fabs(k->abs_diff_sum(a.data(), c.data(), n) -
                      ref.abs_diff_sum(a.data(), c.data(), n)) <= tol);
      auto y1 = c;
      auto y2 = c;
      k->axpy(0.75, a.data(), y1.data(), n);
      ref.axpy(0.75, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 1e-14 * (1 + std::fabs(y2[i])));
    }
  }
}

TEST_CASE("scalar reference kernels") {
  const simd::Kernels& ref = simd::scalar_kernels();
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, -5, 6};
  CHECK(ref.dot(a.data(), b.data(), 3) == 12.0);
  CHECK(ref.sum(b.data(), 3) == 5.0);
  CHECK(ref.abs_diff_sum(a.data(), b.data(), 3) == 13.0);
}

TEST_CASE("vecmat computes v^T M") {
  const std::vector<double> m{1, 2, 3, 4, 5, 6};  // 2 x 3
  const std::vector<double> v{1, -1};
  std::vector<double> out(3);
  simd::vecmat(v, m.data(), 2, 3, out);
  CHECK(out == std::vector<double>{-3, -3, -3});
  std::vector<double> wrong(2);
  CHECK_THROWS_AS(simd::vecmat(v, m.data(), 2, 3, wrong), DomainError);
}

TEST_CASE("chain diagnostics agree across backends") {
  BackendGuard guard;
  const Kernel kern = random_npsd(6, 0, 9);
  const KernelDistribution mu(kern, 3);
  simd::set_backend(simd::Backend::kScalar);
  const ChainMatrix c = build_downup(mu, 1);
  const ConductanceResult phi_ref = conductance(c);
  const double stat_ref = stationarity_error(c);
  for (auto b : {simd::Backend::kAvx2, simd::Backend::kNeon}) {
    if (!simd::backend_supported(b)) continue;
    simd::set_backend(b);
    const ChainMatrix cb = build_downup(mu, 1);
    CHECK((cb.p - c.p).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(std::fabs(conductance(cb).value - phi_ref.value) <= 1e-12);
    CHECK(std::fabs(stationarity_error(cb) - stat_ref) <= 1e-14);
  }
}

TEST_CASE("unsupported backends are rejected") {
  BackendGuard guard;
  for (auto b : {simd::Backend::kAvx2, simd::Backend::kNeon}) {
    if (!simd::backend_supported(b)) CHECK_THROWS_AS(simd::set_backend(b), DomainError);
  }
  CHECK(simd::backend_supported(simd::Backend::kScalar));
}
