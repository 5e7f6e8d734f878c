// Copyright 2026 The rtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtt/rng.hpp"

namespace rtt {

using Card = std::int32_t;

// A deck in one-line notation. entries[i] is the card at depth i+1; the
// public contract is 1-based (position 1 = top of deck), storage is 0-based.
struct Permutation {
  std::vector<Card> entries;

  std::int64_t size() const { return static_cast<std::int64_t>(entries.size()); }

  // Card at 1-based position i.
  Card at(std::int64_t i) const { return entries[static_cast<std::size_t>(i - 1)]; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

inline Permutation identity(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("deck size must be at least 1");
  Permutation p;
  p.entries.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) p.entries[static_cast<std::size_t>(i)] = static_cast<Card>(i + 1);
  return p;
}

// Validates that `entries` is a bijection of [n] and wraps it.
inline Permutation make_permutation(std::vector<Card> entries) {
  const auto n = static_cast<std::int64_t>(entries.size());
  if (n < 1) throw std::invalid_argument("deck size must be at least 1");
  std::vector<bool> seen(entries.size(), false);
  for (Card c : entries) {
    if (c < 1 || c > n || seen[static_cast<std::size_t>(c - 1)])
      throw std::invalid_argument("entries are not a permutation of 1..n");
    seen[static_cast<std::size_t>(c - 1)] = true;
  }
  return Permutation{std::move(entries)};
}

// Fisher-Yates, every permutation of [n] with probability 1/n!.
inline Permutation sample_uniform(std::int64_t n, Rng& rng) {
  Permutation p = identity(n);
  for (std::int64_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(p.entries[static_cast<std::size_t>(i)], p.entries[static_cast<std::size_t>(j)]);
  }
  return p;
}

inline Permutation invert(const Permutation& p) {
  Permutation q;
  q.entries.resize(p.entries.size());
  for (std::int64_t i = 0; i < p.size(); ++i)
    q.entries[static_cast<std::size_t>(p.entries[static_cast<std::size_t>(i)] - 1)] =
        static_cast<Card>(i + 1);
  return q;
}

inline std::int64_t count_fixed_points(const Permutation& p) {
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < p.size(); ++i)
    if (p.entries[static_cast<std::size_t>(i)] == i + 1) ++count;
  return count;
}

inline std::int64_t count_descents(const Permutation& p) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i + 1 < p.entries.size(); ++i)
    if (p.entries[i] > p.entries[i + 1]) ++count;
  return count;
}

namespace detail {

// Merge sort counting pairs (i, j), i < j, a[i] > a[j].
inline std::int64_t merge_count(std::vector<Card>& a, std::vector<Card>& tmp,
                                std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      tmp[k++] = a[i++];
    } else {
      inv += static_cast<std::int64_t>(mid - i);
      tmp[k++] = a[j++];
    }
  }
  while (i < mid) tmp[k++] = a[i++];
  while (j < hi) tmp[k++] = a[j++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace detail

// O(n log n) merge count.
inline std::int64_t count_inversions(const Permutation& p) {
  std::vector<Card> a = p.entries;
  std::vector<Card> tmp(a.size());
  return detail::merge_count(a, tmp, 0, a.size());
}

// Statistics of the first j positions. prefix_inversions counts pairs whose
// first index lies in the prefix and whose second index ranges over the whole
// deck, i.e. the partial sum of the inversion-table entries R_1 + ... + R_j.
struct PrefixSummary {
  Card prefix_max = 0;
  std::int64_t prefix_fixed = 0;
  std::int64_t prefix_descents = 0;
  std::int64_t prefix_inversions = 0;
};

inline PrefixSummary prefix_summary(const Permutation& p, std::int64_t j) {
  const std::int64_t n = p.size();
  if (j < 1 || j > n) throw std::invalid_argument("prefix length out of range");
  PrefixSummary s;
  for (std::int64_t i = 1; i <= j; ++i) {
    const Card c = p.at(i);
    s.prefix_max = std::max(s.prefix_max, c);
    if (c == i) ++s.prefix_fixed;
    if (i < j && c > p.at(i + 1)) ++s.prefix_descents;
  }
  // Inversions with first index <= j: count smaller elements to the right of
  // each prefix position with a Fenwick tree over card values, scanning from
  // the right.
  std::vector<std::int32_t> tree(static_cast<std::size_t>(n) + 1, 0);
  const auto add = [&](std::int64_t v) {
    for (; v <= n; v += v & (-v)) ++tree[static_cast<std::size_t>(v)];
  };
  const auto count_below = [&](std::int64_t v) {
    std::int64_t c = 0;
    for (--v; v > 0; v -= v & (-v)) c += tree[static_cast<std::size_t>(v)];
    return c;
  };
  for (std::int64_t i = n; i >= 1; --i) {
    if (i <= j) s.prefix_inversions += count_below(p.at(i));
    add(p.at(i));
  }
  return s;
}

}  // namespace rtt
