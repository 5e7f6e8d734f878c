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
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtt/permutation.hpp"
#include "rtt/rng.hpp"

namespace rtt {

// The r card choices driving one shuffle trajectory. Replayable: any Monte
// Carlo discrepancy is reproducible from the serialized sequence alone.
struct SelectionSequence {
  std::int64_t n = 0;
  std::vector<Card> picks;

  std::int64_t shuffles() const { return static_cast<std::int64_t>(picks.size()); }

  void validate() const {
    if (n < 1) throw std::invalid_argument("deck size must be at least 1");
    for (Card c : picks)
      if (c < 1 || c > n) throw std::invalid_argument("pick outside 1..n");
  }

  // Single-line replay format: `n r p1 p2 ... pr`.
  std::string to_line() const {
    std::ostringstream os;
    os << n << ' ' << picks.size();
    for (Card c : picks) os << ' ' << c;
    return os.str();
  }

  static SelectionSequence from_line(const std::string& line) {
    std::istringstream is(line);
    SelectionSequence s;
    std::int64_t r = -1;
    if (!(is >> s.n >> r) || r < 0) throw std::invalid_argument("bad replay line");
    s.picks.resize(static_cast<std::size_t>(r));
    for (auto& c : s.picks)
      if (!(is >> c)) throw std::invalid_argument("bad replay line");
    std::string rest;
    if (is >> rest) throw std::invalid_argument("trailing tokens in replay line");
    s.validate();
    return s;
  }
};

struct ShuffleOutcome {
  Permutation deck;
  std::int64_t distinct_selected = 0;
};

// Literal deck manipulation: start from the identity and move each picked
// card to the top. O(r * n); retained as the pathwise oracle for apply_fast.
inline ShuffleOutcome apply_naive(const SelectionSequence& s) {
  s.validate();
  Permutation deck = identity(s.n);
  std::vector<bool> seen(static_cast<std::size_t>(s.n) + 1, false);
  std::int64_t distinct = 0;
  for (Card c : s.picks) {
    if (!seen[static_cast<std::size_t>(c)]) {
      seen[static_cast<std::size_t>(c)] = true;
      ++distinct;
    }
    auto it = std::find(deck.entries.begin(), deck.entries.end(), c);
    std::rotate(deck.entries.begin(), it, it + 1);
  }
  return {std::move(deck), distinct};
}

// Same outcome as apply_naive bit for bit, in O(r + n log n): the final deck
// is the picked cards ordered by last-pick time descending, followed by the
// never-picked cards ascending.
inline ShuffleOutcome apply_fast(const SelectionSequence& s) {
  s.validate();
  std::vector<std::int64_t> last(static_cast<std::size_t>(s.n) + 1, 0);
  std::int64_t distinct = 0;
  for (std::int64_t t = 0; t < s.shuffles(); ++t) {
    const auto c = static_cast<std::size_t>(s.picks[static_cast<std::size_t>(t)]);
    if (last[c] == 0) ++distinct;
    last[c] = t + 1;
  }
  Permutation deck = identity(s.n);
  std::sort(deck.entries.begin(), deck.entries.end(), [&](Card a, Card b) {
    const std::int64_t ta = last[static_cast<std::size_t>(a)];
    const std::int64_t tb = last[static_cast<std::size_t>(b)];
    return ta != tb ? ta > tb : a < b;
  });
  return {std::move(deck), distinct};
}

inline SelectionSequence sample_selection_sequence(std::int64_t n, std::int64_t r, Rng& rng) {
  if (n < 1) throw std::invalid_argument("deck size must be at least 1");
  if (r < 0) throw std::invalid_argument("shuffle count must be nonnegative");
  SelectionSequence s;
  s.n = n;
  s.picks.resize(static_cast<std::size_t>(r));
  for (auto& c : s.picks)
    c = static_cast<Card>(rng.below(static_cast<std::uint64_t>(n)) + 1);
  return s;
}

// r iterated random-to-top shuffles of an n-card deck, picks i.i.d. uniform.
inline ShuffleOutcome sample_random_to_top(std::int64_t n, std::int64_t r, Rng& rng) {
  return apply_fast(sample_selection_sequence(n, r, rng));
}

// Top-to-random is the group-theoretic inverse move.
inline Permutation sample_top_to_random(std::int64_t n, std::int64_t r, Rng& rng) {
  return invert(sample_random_to_top(n, r, rng).deck);
}

}  // namespace rtt
