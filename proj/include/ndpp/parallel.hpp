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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ndpp {

/// Process-wide cap on worker threads (0 means hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs f(i) for i in [0, count) over up to max_threads() workers with static
/// chunking. Callers write results by index, so output order never depends
/// on scheduling. The first exception thrown by any task is rethrown.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1U, max_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace ndpp
