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

// Compiled with -mavx2 -mfma on x86-64; only reached after a CPUID check.

#include "backends.hpp"

#if defined(NDPP_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <cmath>

namespace ndpp::simd::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t n) {
  // Clearing the sign bit gives |x|.
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, mask));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

}  // namespace

const Kernels* avx2_table() {
  static const Kernels table{dot_avx2, axpy_avx2, sum_avx2, abs_diff_sum_avx2};
  return &table;
}

}  // namespace ndpp::simd::detail

#else

namespace ndpp::simd::detail {
const Kernels* avx2_table() { return nullptr; }
}  // namespace ndpp::simd::detail

#endif
