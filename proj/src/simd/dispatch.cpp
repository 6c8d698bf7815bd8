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

#include <atomic>
#include <cstdlib>
#include <string>

#include "backends.hpp"
#include "ndpp/error.hpp"

namespace ndpp::simd {
namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const Kernels*>& active_table() {
  static std::atomic<const Kernels*> table{nullptr};
  return table;
}

std::atomic<Backend>& active_id() {
  static std::atomic<Backend> id{Backend::kScalar};
  return id;
}

void install(Backend b) {
  const Kernels* k = kernels_for(b);
  if (k == nullptr) {
    throw DomainError("simd backend '" + std::string(backend_name(b)) +
                      "' is not available on this host");
  }
  active_id().store(b);
  active_table().store(k);
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

const Kernels* kernels_for(Backend b) {
  switch (b) {
    case Backend::kScalar: return &scalar_kernels();
    case Backend::kAvx2: return cpu_has_avx2() ? detail::avx2_table() : nullptr;
    case Backend::kNeon: return detail::neon_table();
  }
  return nullptr;
}

bool backend_supported(Backend b) { return kernels_for(b) != nullptr; }

Backend detect_backend() {
  if (const char* env = std::getenv("NDPP_SIMD")) {
    const std::string want(env);
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
      if (want == backend_name(b) && backend_supported(b)) return b;
    }
  }
  if (backend_supported(Backend::kAvx2)) return Backend::kAvx2;
  if (backend_supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Backend active_backend() {
  active();
  return active_id().load();
}

void set_backend(Backend b) { install(b); }

const Kernels& active() {
  const Kernels* k = active_table().load(std::memory_order_acquire);
  if (k == nullptr) {
    install(detect_backend());
    k = active_table().load();
  }
  return *k;
}

void vecmat(std::span<const double> v, const double* m, std::size_t rows,
            std::size_t cols, std::span<double> out) {
  if (v.size() != rows || out.size() != cols) {
    throw DomainError("vecmat: dimension mismatch");
  }
  const Kernels& k = active();
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (v[i] != 0.0) k.axpy(v[i], m + i * cols, out.data(), cols);
  }
}

}  // namespace ndpp::simd
