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

// Vectorized inner loops used by the LU elimination, the Schur updates and
// the Markov-chain diagnostics. Every kernel has a scalar reference version;
// wider variants are selected once at runtime from the CPU feature set and
// must agree with the reference up to floating-point reassociation.

#include <cstddef>
#include <span>
#include <string_view>

namespace ndpp::simd {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend b);

/// Function table for one backend.
struct Kernels {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
};

/// Reference implementations; always available.
const Kernels& scalar_kernels();

/// Returns nullptr when the backend was not compiled in or the CPU lacks it.
const Kernels* kernels_for(Backend b);

bool backend_supported(Backend b);

/// Best backend the host supports, unless NDPP_SIMD=scalar|avx2|neon says
/// otherwise.
Backend detect_backend();

Backend active_backend();

/// Switches the process-wide backend. Throws DomainError if unsupported.
void set_backend(Backend b);

const Kernels& active();

// Convenience wrappers over the active table.

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double sum(std::span<const double> a) {
  return active().sum(a.data(), a.size());
}

inline double abs_diff_sum(std::span<const double> a,
                           std::span<const double> b) {
  return active().abs_diff_sum(a.data(), b.data(), a.size());
}

/// out = v^T * M for a row-major rows x cols matrix.
void vecmat(std::span<const double> v, const double* m, std::size_t rows,
            std::size_t cols, std::span<double> out);

}  // namespace ndpp::simd
