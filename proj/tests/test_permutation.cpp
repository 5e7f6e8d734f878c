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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <map>
#include <numeric>

#include "rtt/permutation.hpp"

namespace {

using namespace rtt;

// Quadratic pair-scan oracle, kept independent of the merge counter.
std::int64_t inversions_bruteforce(const Permutation& p) {
  std::int64_t count = 0;
  for (std::int64_t i = 1; i <= p.size(); ++i)
    for (std::int64_t j = i + 1; j <= p.size(); ++j)
      if (p.at(i) > p.at(j)) ++count;
  return count;
}

template <class F>
void for_all_permutations(std::int64_t n, F&& f) {
  std::vector<Card> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    f(Permutation{v});
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("identity deck", "[permutation]") {
  CHECK(identity(3).entries == std::vector<Card>{1, 2, 3});
  CHECK(identity(1).entries == std::vector<Card>{1});
  const Permutation p = identity(5);
  CHECK(count_fixed_points(p) == 5);
  CHECK(count_descents(p) == 0);
  CHECK(count_inversions(p) == 0);
  CHECK_THROWS_AS(identity(0), std::invalid_argument);
}

TEST_CASE("make_permutation validates", "[permutation]") {
  CHECK_THROWS_AS(make_permutation({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_permutation({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_permutation({}), std::invalid_argument);
  CHECK(make_permutation({2, 3, 1}).entries == std::vector<Card>{2, 3, 1});
}

TEST_CASE("uniform sampling", "[permutation]") {
  Rng rng(12);
  CHECK(sample_uniform(1, rng).entries == std::vector<Card>{1});

  // Same seed, same permutation.
  Rng a(99), b(99);
  CHECK(sample_uniform(20, a) == sample_uniform(20, b));

  // n=3: each of the 6 permutations within 4 standard errors of 1/6.
  const std::int64_t draws = 60000;
  std::map<std::vector<Card>, std::int64_t> freq;
  Rng rng3(777);
  for (std::int64_t i = 0; i < draws; ++i) ++freq[sample_uniform(3, rng3).entries];
  REQUIRE(freq.size() == 6);
  const double p = 1.0 / 6.0;
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
  for (const auto& [perm, count] : freq)
    CHECK(std::abs(static_cast<double>(count) / static_cast<double>(draws) - p) < 4 * se);
}

TEST_CASE("inverse", "[permutation]") {
  CHECK(invert(make_permutation({1, 2, 3})).entries == std::vector<Card>{1, 2, 3});
  CHECK(invert(make_permutation({2, 3, 1})).entries == std::vector<Card>{3, 1, 2});

  const Permutation p = make_permutation({2, 5, 1, 4, 3});
  const Permutation q = invert(p);
  Permutation composed;
  composed.entries.resize(5);
  for (std::int64_t i = 1; i <= 5; ++i)
    composed.entries[static_cast<std::size_t>(i - 1)] = q.at(p.at(i));
  CHECK(composed == identity(5));
  CHECK(invert(invert(p)) == p);
}

TEST_CASE("statistics of {2,5,1,4,3}", "[permutation]") {
  const Permutation p = make_permutation({2, 5, 1, 4, 3});
  CHECK(count_fixed_points(p) == 1);  // position 4
  CHECK(count_descents(p) == 2);      // (2,3) and (4,5)
  // Inverted pairs: (1,3), (2,3), (2,4), (2,5), (4,5).
  CHECK(count_inversions(p) == 5);
  CHECK(inversions_bruteforce(p) == 5);
}

TEST_CASE("statistic edge values", "[permutation]") {
  CHECK(count_fixed_points(identity(4)) == 4);
  CHECK(count_fixed_points(make_permutation({2, 1})) == 0);
  CHECK(count_descents(identity(7)) == 0);
  CHECK(count_descents(make_permutation({3, 2, 1})) == 2);
  CHECK(count_inversions(make_permutation({3, 2, 1})) == 3);
}

TEST_CASE("merge count agrees with pair scan", "[permutation]") {
  Rng rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = rng.uniform_int(1, 200);
    const Permutation p = sample_uniform(n, rng);
    REQUIRE(count_inversions(p) == inversions_bruteforce(p));
  }
}

TEST_CASE("prefix summary on the worked ten-card deck", "[permutation]") {
  const Permutation p = make_permutation({2, 7, 3, 8, 1, 10, 5, 9, 6, 4});
  const PrefixSummary s = prefix_summary(p, 5);
  CHECK(s.prefix_max == 8);
  CHECK(s.prefix_fixed == 1);
  CHECK(s.prefix_descents == 2);

  CHECK(prefix_summary(p, 10).prefix_inversions == count_inversions(p));
  CHECK(prefix_summary(p, 1).prefix_descents == 0);
  CHECK_THROWS_AS(prefix_summary(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(prefix_summary(p, 11), std::invalid_argument);
}

TEST_CASE("prefix summary matches direct recount", "[permutation]") {
  Rng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = rng.uniform_int(1, 40);
    const Permutation p = sample_uniform(n, rng);
    const auto j = rng.uniform_int(1, n);
    const PrefixSummary s = prefix_summary(p, j);
    Card mx = 0;
    std::int64_t fixed = 0, descents = 0, inversions = 0;
    for (std::int64_t i = 1; i <= j; ++i) {
      mx = std::max(mx, p.at(i));
      if (p.at(i) == i) ++fixed;
      if (i < j && p.at(i) > p.at(i + 1)) ++descents;
      for (std::int64_t k = i + 1; k <= n; ++k)
        if (p.at(i) > p.at(k)) ++inversions;
    }
    REQUIRE(s.prefix_max == mx);
    REQUIRE(s.prefix_fixed == fixed);
    REQUIRE(s.prefix_descents == descents);
    REQUIRE(s.prefix_inversions == inversions);
    REQUIRE(s.prefix_max >= j);
  }
}

TEST_CASE("exhaustive invariants for n <= 6", "[permutation]") {
  for (std::int64_t n = 1; n <= 6; ++n) {
    std::int64_t total = 0, sum_inv = 0, sum_desc = 0, sum_fixed = 0;
    for_all_permutations(n, [&](const Permutation& p) {
      ++total;
      const std::int64_t inv = count_inversions(p);
      const std::int64_t desc = count_descents(p);
      sum_inv += inv;
      sum_desc += desc;
      sum_fixed += count_fixed_points(p);
      // Zero inversions or descents both single out the identity.
      REQUIRE((inv == 0) == (p == identity(n)));
      REQUIRE((desc == 0) == (p == identity(n)));
      // Inversions and fixed points are invariant under inversion.
      const Permutation q = invert(p);
      REQUIRE(count_inversions(q) == inv);
      REQUIRE(count_fixed_points(q) == count_fixed_points(p));
    });
    // Uniform-permutation centering constants, as exact integer identities:
    // mean inversions n(n-1)/4, mean descents (n-1)/2, mean fixed points 1.
    REQUIRE(4 * sum_inv == total * n * (n - 1));
    REQUIRE(2 * sum_desc == total * (n - 1));
    REQUIRE(sum_fixed == total);
  }
}

}  // namespace
