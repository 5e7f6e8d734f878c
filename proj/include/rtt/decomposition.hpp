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

#include "rtt/occupancy.hpp"
#include "rtt/permutation.hpp"
#include "rtt/rng.hpp"

namespace rtt {

// Samplers that realize the equalities in distribution between shuffle
// statistics and randomly indexed statistics of uniform permutations,
// without simulating any shuffle. The occupancy draw plays the role of the
// number of distinct selected cards.

enum class DescentChannel {
  ResampledDeck,  // exact in law
  FormulaDirect,  // adjacent uniform comparisons; matches after sqrt(n) scaling
};

struct DecomposedDraw {
  std::int64_t k = 0;
  std::int64_t statistic_value = 0;
  DescentChannel channel = DescentChannel::FormulaDirect;
};

// Sorts the last n-k entries ascending; the conditional deck shape given k
// distinct selected cards.
inline Permutation reorder_tail_ascending(Permutation p, std::int64_t k) {
  std::sort(p.entries.begin() + static_cast<std::ptrdiff_t>(k), p.entries.end());
  return p;
}

// Draw K, draw a uniform permutation, sort its last n-K entries ascending.
// Equal in distribution to the deck after r random-to-top shuffles.
inline Permutation sample_resampled_deck(std::int64_t n, std::int64_t r, Rng& rng) {
  const std::int64_t k = sample_occupied(n, r, rng);
  if (k == 0) return identity(n);
  return reorder_tail_ascending(sample_uniform(n, rng), k);
}

// n - max(first K) + #fixed(first K) of a uniform permutation; equal in law
// to the fixed-point count. K = 0 means nothing was ever selected: identity.
inline std::int64_t sample_fixed_points_decomposed(std::int64_t n, std::int64_t r, Rng& rng) {
  const std::int64_t k = sample_occupied(n, r, rng);
  if (k == 0) return n;
  const Permutation pi = sample_uniform(n, rng);
  Card prefix_max = 0;
  std::int64_t prefix_fixed = 0;
  for (std::int64_t i = 1; i <= k; ++i) {
    const Card c = pi.at(i);
    prefix_max = std::max(prefix_max, c);
    if (c == i) ++prefix_fixed;
  }
  return n - prefix_max + prefix_fixed;
}

// Two channels for the descent count. ResampledDeck counts descents of a
// resampled deck and is exactly the shuffle law. FormulaDirect sums K-1
// adjacent comparisons of i.i.d. uniforms plus one boundary indicator
// between positions K and K+1; the theorem pins the decomposition only up
// to that O(1) boundary term, so this channel is not claimed exact in law.
inline DecomposedDraw sample_descents_decomposed(std::int64_t n, std::int64_t r, Rng& rng,
                                                 DescentChannel channel) {
  DecomposedDraw draw;
  draw.channel = channel;
  if (channel == DescentChannel::ResampledDeck) {
    const std::int64_t k = sample_occupied(n, r, rng);
    draw.k = k;
    draw.statistic_value =
        k == 0 ? 0 : count_descents(reorder_tail_ascending(sample_uniform(n, rng), k));
    return draw;
  }
  const std::int64_t k = sample_occupied(n, r, rng);
  draw.k = k;
  if (k == 0) return draw;
  // Ties between continuous uniforms occur with probability ~0 and count as
  // non-descents.
  const std::int64_t comparisons = std::min(k, n - 1);
  double prev = rng.uniform01();
  std::int64_t descents = 0;
  for (std::int64_t i = 0; i < comparisons; ++i) {
    const double next = rng.uniform01();
    if (prev > next) ++descents;
    prev = next;
  }
  draw.statistic_value = descents;
  return draw;
}

// Sum of K independent discrete uniforms R_i on {0, ..., n-i}; exactly the
// inversion count in law.
inline std::int64_t sample_inversions_decomposed(std::int64_t n, std::int64_t r, Rng& rng) {
  const std::int64_t k = sample_occupied(n, r, rng);
  std::int64_t sum = 0;
  for (std::int64_t i = 1; i <= k; ++i)
    sum += static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - i + 1)));
  return sum;
}

}  // namespace rtt
