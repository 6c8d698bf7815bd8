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

#include "backends.hpp"

#if defined(NDPP_BUILD_NEON) && defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace ndpp::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_neon(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

double abs_diff_sum_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

}  // namespace

const Kernels* neon_table() {
  static const Kernels table{dot_neon, axpy_neon, sum_neon, abs_diff_sum_neon};
  return &table;
}

}  // namespace ndpp::simd::detail

#else

namespace ndpp::simd::detail {
const Kernels* neon_table() { return nullptr; }
}  // namespace ndpp::simd::detail

#endif
