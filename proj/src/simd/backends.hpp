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

#include "ndpp/simd.hpp"

namespace ndpp::simd::detail {

// Defined in the per-ISA translation units. Each returns nullptr when its
// variant was not compiled for this target.
const Kernels* avx2_table();
const Kernels* neon_table();

}  // namespace ndpp::simd::detail
