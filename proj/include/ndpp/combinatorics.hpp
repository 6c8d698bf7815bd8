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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ndpp {

/// A subset of the ground set [0, n), kept strictly increasing.
using IndexSet = std::vector<int>;

/// Exact binomial coefficient; saturates at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Sorted, duplicate-free copy of `items`.
IndexSet normalized(std::span<const int> items);

bool is_strictly_increasing(std::span<const int> s);

/// Throws DomainError unless `s` holds distinct indices in [0, n).
void check_index_set(std::span<const int> s, int n);

IndexSet set_union(std::span<const int> a, std::span<const int> b);
IndexSet set_intersection(std::span<const int> a, std::span<const int> b);
IndexSet set_difference(std::span<const int> a, std::span<const int> b);
IndexSet symmetric_difference(std::span<const int> a, std::span<const int> b);

/// |S \ T| for equal-size sets.
int swap_distance(std::span<const int> s, std::span<const int> t);

/// [0, n) \ s.
IndexSet complement(std::span<const int> s, int n);

/// Bit i set iff i is in s (n <= 64).
std::uint64_t to_mask(std::span<const int> s);
IndexSet from_mask(std::uint64_t mask);

/// Visits every size-k subset of `pool` in lexicographic order of positions.
/// The callback receives the subset (sorted when `pool` is sorted). Returning
/// false stops the enumeration.
void for_each_combination(std::span<const int> pool, int k,
                          const std::function<bool(std::span<const int>)>& f);

/// Same over the pool [0, n).
void for_each_combination(int n, int k,
                          const std::function<bool(std::span<const int>)>& f);

/// All size-k subsets of [0, n) in lexicographic order.
std::vector<IndexSet> all_subsets(int n, int k);

/// Number of sets in the r-swap neighborhood of a k-set inside [0, n),
/// including the set itself: sum_{s<=r} C(k,s) C(n-k,s).
std::uint64_t neighborhood_size(int n, int k, int r);

/// Visits every T with |T| = |S| and |S \ T| <= r. Order: S first, then
/// by swap size s = 1..r, removed block (lexicographic), added block
/// (lexicographic). The callback also receives the removed and added blocks.
void for_each_neighbor(
    std::span<const int> s, int r, int n,
    const std::function<void(std::span<const int> t, std::span<const int> removed,
                             std::span<const int> added)>& f);

/// Colexicographic rank of a sorted k-set; a bijection onto [0, C(n,k)).
std::uint64_t colex_rank(std::span<const int> s);

std::string to_string(std::span<const int> s);

}  // namespace ndpp
