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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rtt/bigrational.hpp"
#include "rtt/rng.hpp"

namespace rtt {

// Law of the occupancy count: the number of occupied boxes after r balls are
// thrown into n boxes uniformly at random. Pathwise, this is the number of
// distinct cards selected by r random-to-top shuffles.

inline void check_occupancy_args(std::int64_t n, std::int64_t r) {
  if (n < 1) throw std::invalid_argument("box count must be at least 1");
  if (r < 0) throw std::invalid_argument("throw count must be nonnegative");
}

// One draw of the occupancy count, O(r).
inline std::int64_t sample_occupied(std::int64_t n, std::int64_t r, Rng& rng) {
  check_occupancy_args(n, r);
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  std::int64_t occupied = 0;
  for (std::int64_t t = 0; t < r; ++t) {
    const auto box = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
    if (!hit[box]) {
      hit[box] = true;
      ++occupied;
    }
  }
  return occupied;
}

// Exact finite-n mean and variance:
//   E    = n - n(1-1/n)^r
//   Var  = n(1-1/n)^r + n(n-1)(1-2/n)^r - n^2 (1-1/n)^{2r}
inline std::pair<double, double> occupied_moments(std::int64_t n, std::int64_t r) {
  check_occupancy_args(n, r);
  if (r == 0) return {0.0, 0.0};
  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  const double p1 = n == 1 ? 0.0 : std::exp(rd * std::log1p(-1.0 / nd));
  const double p2 = n <= 2 ? 0.0 : std::exp(rd * std::log1p(-2.0 / nd));
  const double mean = nd - nd * p1;
  const double var = nd * p1 + nd * (nd - 1.0) * p2 - nd * nd * p1 * p1;
  return {mean, std::max(var, 0.0)};
}

// Exact PMF numerators over the common denominator n^r:
// weight[r+1][k] = k * weight[r][k] + (n-k+1) * weight[r][k-1].
inline std::vector<BigInt> occupied_weights(std::int64_t n, std::int64_t r) {
  check_occupancy_args(n, r);
  std::vector<BigInt> w(static_cast<std::size_t>(n) + 1, BigInt(0));
  w[0] = 1;
  for (std::int64_t step = 0; step < r; ++step) {
    const std::int64_t top = std::min(n, step + 1);
    for (std::int64_t k = top; k >= 1; --k)
      w[static_cast<std::size_t>(k)] =
          k * w[static_cast<std::size_t>(k)] + (n - k + 1) * w[static_cast<std::size_t>(k - 1)];
    w[0] = 0;
  }
  return w;
}

inline std::vector<BigRat> occupied_pmf_exact(std::int64_t n, std::int64_t r) {
  const std::vector<BigInt> w = occupied_weights(n, r);
  const BigInt denom = big_pow(n, r);
  std::vector<BigRat> pmf(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) pmf[k] = BigRat(w[k], denom);
  return pmf;
}

// Exact PMF of the occupancy count, indexed 0..n. Small problems (n*r <=
// 10^4) go through integer arithmetic and are rounded once at the end;
// larger ones run the same recurrence in double precision (all terms are
// positive convex combinations, so the recurrence is stable).
inline std::vector<double> occupied_pmf(std::int64_t n, std::int64_t r) {
  check_occupancy_args(n, r);
  if (n * r <= 10000) {
    const std::vector<BigRat> exact = occupied_pmf_exact(n, r);
    std::vector<double> pmf(exact.size());
    for (std::size_t k = 0; k < exact.size(); ++k) pmf[k] = to_double(exact[k]);
    return pmf;
  }
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
  pmf[0] = 1.0;
  const double nd = static_cast<double>(n);
  for (std::int64_t step = 0; step < r; ++step) {
    const std::int64_t top = std::min(n, step + 1);
    for (std::int64_t k = top; k >= 1; --k)
      pmf[static_cast<std::size_t>(k)] =
          pmf[static_cast<std::size_t>(k)] * (static_cast<double>(k) / nd) +
          pmf[static_cast<std::size_t>(k - 1)] * (static_cast<double>(n - k + 1) / nd);
    pmf[0] = 0.0;
  }
  return pmf;
}

// P(occupancy count >= k) from a PMF.
inline double pmf_tail(const std::vector<double>& pmf, std::int64_t k) {
  double tail = 0.0;
  for (std::size_t i = pmf.size(); i-- > 0;) {
    if (static_cast<std::int64_t>(i) < k) break;
    tail += pmf[i];
  }
  return std::min(tail, 1.0);
}

// Asymptotic coefficients for the r = c*n central limit theorem:
// (K - n(1-e^{-c})) / sqrt(n(e^{-c} - (1+c)e^{-2c})) => N(0,1).
inline std::pair<double, double> occupied_clt_params(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("shuffle ratio c must be positive");
  const double e1 = std::exp(-c);
  return {1.0 - e1, e1 - (1.0 + c) * e1 * e1};
}

// Mean/variance/PMF bundle for one (n, r).
struct OccupancyLaw {
  std::int64_t n = 0;
  std::int64_t r = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> pmf;
};

inline OccupancyLaw occupancy_law(std::int64_t n, std::int64_t r) {
  OccupancyLaw law;
  law.n = n;
  law.r = r;
  std::tie(law.mean, law.variance) = occupied_moments(n, r);
  law.pmf = occupied_pmf(n, r);
  return law;
}

}  // namespace rtt
