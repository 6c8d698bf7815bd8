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
#include <random>

namespace ndpp {

/// Seedable generator used for instance generation and walk sampling.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distribution helpers below are implemented here rather than
/// through <random> distributions, whose outputs are implementation-defined,
/// so a given seed yields the same stream with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard normal via the Box-Muller transform (one value per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace ndpp
