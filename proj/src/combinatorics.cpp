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

#include "ndpp/combinatorics.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <numeric>
#include <sstream>

#include "ndpp/error.hpp"

namespace ndpp {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

IndexSet normalized(std::span<const int> items) {
  IndexSet out(items.begin(), items.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_strictly_increasing(std::span<const int> s) {
  return std::adjacent_find(s.begin(), s.end(),
                            [](int a, int b) { return a >= b; }) == s.end();
}

void check_index_set(std::span<const int> s, int n) {
  for (int i : s) {
    if (i < 0 || i >= n) {
      throw DomainError("index " + std::to_string(i) + " out of range [0, " +
                        std::to_string(n) + ")");
    }
  }
  IndexSet sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("index set has repeated entries: " + to_string(s));
  }
}

IndexSet set_union(std::span<const int> a, std::span<const int> b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(std::span<const int> a, std::span<const int> b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

IndexSet set_difference(std::span<const int> a, std::span<const int> b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

IndexSet symmetric_difference(std::span<const int> a, std::span<const int> b) {
  IndexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

int swap_distance(std::span<const int> s, std::span<const int> t) {
  return static_cast<int>(set_difference(s, t).size());
}

IndexSet complement(std::span<const int> s, int n) {
  IndexSet all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return set_difference(all, s);
}

std::uint64_t to_mask(std::span<const int> s) {
  std::uint64_t m = 0;
  for (int i : s) m |= std::uint64_t{1} << i;
  return m;
}

IndexSet from_mask(std::uint64_t mask) {
  IndexSet out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

void for_each_combination(std::span<const int> pool, int k,
                          const std::function<bool(std::span<const int>)>& f) {
  const int m = static_cast<int>(pool.size());
  if (k < 0 || k > m) return;
  std::vector<int> pos(static_cast<std::size_t>(k));
  std::iota(pos.begin(), pos.end(), 0);
  IndexSet current(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) current[i] = pool[pos[i]];
    if (!f(current)) return;
    int i = k - 1;
    while (i >= 0 && pos[i] == m - k + i) --i;
    if (i < 0) return;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

void for_each_combination(int n, int k,
                          const std::function<bool(std::span<const int>)>& f) {
  IndexSet pool(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(pool.begin(), pool.end(), 0);
  for_each_combination(pool, k, f);
}

std::vector<IndexSet> all_subsets(int n, int k) {
  std::vector<IndexSet> out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  for_each_combination(n, k, [&](std::span<const int> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

std::uint64_t neighborhood_size(int n, int k, int r) {
  std::uint64_t total = 0;
  for (int s = 0; s <= std::min(r, k); ++s) total += binomial(k, s) * binomial(n - k, s);
  return total;
}

void for_each_neighbor(
    std::span<const int> s, int r, int n,
    const std::function<void(std::span<const int>, std::span<const int>,
                             std::span<const int>)>& f) {
  const int k = static_cast<int>(s.size());
  const IndexSet outside = complement(s, n);
  f(s, {}, {});
  IndexSet t;
  for (int size = 1; size <= std::min(r, k); ++size) {
    for_each_combination(s, size, [&](std::span<const int> removed) {
      const IndexSet kept = set_difference(s, removed);
      for_each_combination(outside, size, [&](std::span<const int> added) {
        t.clear();
        std::merge(kept.begin(), kept.end(), added.begin(), added.end(),
                   std::back_inserter(t));
        f(t, removed, added);
        return true;
      });
      return true;
    });
  }
}

std::uint64_t colex_rank(std::span<const int> s) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    rank += binomial(s[i], static_cast<int>(i) + 1);
  }
  return rank;
}

std::string to_string(std::span<const int> s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace ndpp
