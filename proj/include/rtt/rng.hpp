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

#include <bit>
#include <cstdint>
#include <random>

namespace rtt {

// Seedable random stream with substream derivation.
//
// Generator family (fixed for the release): std::mt19937_64 seeded through a
// splitmix64 hash of (seed, stream index). Bounded draws use bitmask
// rejection, so they are exactly uniform and reproduce bit-for-bit on any
// conforming standard library. Trial-level parallelism must derive one
// substream per trial via `substream(seed, trial)`.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(mix(seed) + kGolden)) {}

  // Independent stream for (seed, stream). Streams with distinct indices are
  // seeded from distinct splitmix64 states.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    Rng r(0);
    r.engine_.seed(mix(mix(seed) + kGolden * (stream + 1)));
    return r;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on {0, 1, ..., bound-1}; bound >= 1. Bitmask rejection, no bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const int zeros = std::countl_zero(bound - 1);
    const std::uint64_t mask = ~std::uint64_t{0} >> zeros;
    std::uint64_t x;
    do {
      x = engine_() & mask;
    } while (x >= bound);
    return x;
  }

  // Uniform on {lo, ..., hi}, inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  // splitmix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rtt
