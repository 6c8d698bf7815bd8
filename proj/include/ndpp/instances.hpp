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

#include <cstdint>
#include <vector>

#include "ndpp/kernel.hpp"

namespace ndpp {

/// A + S with A = G^T G (G is d x n, standard normal) and S = M - M^T
/// (M standard normal, scaled by `skew`). The symmetric part is PSD, so
/// the kernel is nPSD. d = 0 means d = n.
Kernel random_npsd(int n, int d, std::uint64_t seed, double skew = 1.0);

/// G^T G with G d x n standard normal (d = 0 means n).
Kernel random_sym_psd(int n, int d, std::uint64_t seed);

Kernel identity_kernel(int n);

/// B C B^T with B n x d standard normal and C = H^T H + (M - M^T), d x d.
/// The factors are kept with the kernel.
Kernel random_lowrank_npsd(int n, int d, std::uint64_t seed);

/// Block diagonal with 2 x 2 blocks [[c_i, x_i], [-x_i, c_i]]. Requires
/// c strictly decreasing with every c_i > 1, x strictly increasing, and
/// min x >= 10 max c. Throws DomainError otherwise.
Kernel skew_block(const std::vector<double>& c, const std::vector<double>& x);

/// Diagonal kernel.
Kernel diagonal_kernel(const std::vector<double>& d);

}  // namespace ndpp
