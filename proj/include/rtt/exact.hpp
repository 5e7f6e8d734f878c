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
#include <vector>

#include "rtt/bigrational.hpp"
#include "rtt/occupancy.hpp"

namespace rtt {

// Closed-form finite-n quantities for iterated random-to-top shuffles.
// Convention throughout: 0^0 = 1, so every formula is valid at r = 0.

enum class ExactMethod { ClosedForm, AlternatingSum, Convolution };

struct ExactValue {
  double value = 0.0;
  ExactMethod method = ExactMethod::ClosedForm;
};

namespace detail {

inline double ratio_pow(std::int64_t num, std::int64_t den, std::int64_t r) {
  if (r == 0) return 1.0;
  if (num <= 0) return 0.0;
  return std::exp(static_cast<double>(r) *
                  (std::log(static_cast<double>(num)) - std::log(static_cast<double>(den))));
}

}  // namespace detail

// P(card k sits in position k after r shuffles) =
//   ((k-1)/n)^r + P(occupancy count >= k) / n.
inline double return_probability(std::int64_t n, std::int64_t r, std::int64_t k) {
  check_occupancy_args(n, r);
  if (k < 1 || k > n) throw std::invalid_argument("card index out of range");
  const std::vector<double> pmf = occupied_pmf(n, r);
  return detail::ratio_pow(k - 1, n, r) + pmf_tail(pmf, k) / static_cast<double>(n);
}

// Same, but with the occupancy tail shared across all k.
inline double return_probability(std::int64_t n, std::int64_t r, std::int64_t k,
                                 const std::vector<double>& occupancy_pmf) {
  if (k < 1 || k > n) throw std::invalid_argument("card index out of range");
  return detail::ratio_pow(k - 1, n, r) + pmf_tail(occupancy_pmf, k) / static_cast<double>(n);
}

// E[number of fixed points] = 1 + sum_{k=0}^{n-2} (k/n)^r.
inline double expected_fixed_points(std::int64_t n, std::int64_t r) {
  check_occupancy_args(n, r);
  double sum = 1.0;
  for (std::int64_t k = 0; k <= n - 2; ++k) sum += detail::ratio_pow(k, n, r);
  return sum;
}

// E[number of inversions] = (C(n,2)/2) (1 - ((n-2)/n)^r); 0 when n < 2.
inline double expected_inversions(std::int64_t n, std::int64_t r) {
  check_occupancy_args(n, r);
  if (n < 2) return 0.0;
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return 0.5 * pairs * (1.0 - detail::ratio_pow(n - 2, n, r));
}

// Derangement counts D_0..D_m via D_j = (j-1)(D_{j-1} + D_{j-2}).
inline std::vector<BigInt> derangements(std::int64_t m) {
  std::vector<BigInt> d(static_cast<std::size_t>(m) + 1);
  d[0] = 1;
  if (m >= 1) d[1] = 0;
  for (std::int64_t j = 2; j <= m; ++j)
    d[static_cast<std::size_t>(j)] =
        (j - 1) * (d[static_cast<std::size_t>(j - 1)] + d[static_cast<std::size_t>(j - 2)]);
  return d;
}

// P(uniform permutation of [m] has exactly s fixed points), as a double:
// (1/s!) * sum_{i=0}^{m-s} (-1)^i / i!.
inline double uniform_fixed_point_pmf(std::int64_t m, std::int64_t s) {
  if (s < 0 || s > m) return 0.0;
  double pd = 0.0, term = 1.0;
  for (std::int64_t i = 0; i <= m - s; ++i) {
    if (i > 0) term *= -1.0 / static_cast<double>(i);
    pd += term;
  }
  if (s > 170) return 0.0;
  double sfact = 1.0;
  for (std::int64_t i = 2; i <= s; ++i) sfact *= static_cast<double>(i);
  return pd / sfact;
}

inline BigRat uniform_fixed_point_pmf_exact(std::int64_t m, std::int64_t s) {
  if (s < 0 || s > m) return BigRat(0);
  const std::vector<BigInt> d = derangements(m);
  return BigRat(big_binomial(m, s) * d[static_cast<std::size_t>(m - s)], big_factorial(m));
}

namespace detail {

// Alternating sum for Q(k, m, s) with m > k:
//   (1/s!) sum_{t=s}^{k-1} (-1)^{t-s} (k-1)_t / ((t-s)! (m-1)_t).
// Terms are generated by iteratively updated ratios in ascending t; each
// ratio factor is at most 1/(t-s+1), so the tail decays factorially and the
// truncation error is controlled.
inline double q_alternating_double(std::int64_t k, std::int64_t m, std::int64_t s) {
  // lead = (k-1)_s / ((m-1)_s * s!)
  double lead = 1.0;
  for (std::int64_t i = 0; i < s; ++i) {
    lead *= static_cast<double>(k - 1 - i) /
            (static_cast<double>(m - 1 - i) * static_cast<double>(i + 1));
    if (lead == 0.0) return 0.0;
  }
  double sum = 0.0, term = lead;
  for (std::int64_t t = s; t <= k - 1; ++t) {
    sum += term;
    term *= -static_cast<double>(k - 1 - t) /
            (static_cast<double>(m - 1 - t) * static_cast<double>(t - s + 1));
    if (std::abs(term) < 1e-22 * std::max(1.0, std::abs(sum))) break;
  }
  return std::max(sum, 0.0);
}

inline BigRat q_alternating_exact(std::int64_t k, std::int64_t m, std::int64_t s) {
  BigRat lead(1);
  for (std::int64_t i = 0; i < s; ++i) lead *= BigRat(k - 1 - i, (m - 1 - i) * (i + 1));
  BigRat sum(0), term = lead;
  for (std::int64_t t = s; t <= k - 1; ++t) {
    sum += term;
    term *= BigRat(-(k - 1 - t), (m - 1 - t) * (t - s + 1));
  }
  return sum;
}

}  // namespace detail

// Q(k, m, s): probability that a uniformly random (k-1)-permutation of [m-1]
// has exactly s fixed points. Requires m >= k >= 1 and 0 <= s <= k-1. The
// m = k case degenerates to a full permutation of [k-1]. Exact rational
// arithmetic for k <= 20, iterated-ratio alternating sum beyond.
inline double q_fixed_points(std::int64_t k, std::int64_t m, std::int64_t s) {
  if (k < 1 || m < k) throw std::invalid_argument("requires m >= k >= 1");
  if (s < 0 || s > k - 1) return 0.0;
  if (m == k) return uniform_fixed_point_pmf(k - 1, s);
  if (k <= 20) return to_double(detail::q_alternating_exact(k, m, s));
  return detail::q_alternating_double(k, m, s);
}

inline BigRat q_fixed_points_exact(std::int64_t k, std::int64_t m, std::int64_t s) {
  if (k < 1 || m < k) throw std::invalid_argument("requires m >= k >= 1");
  if (s < 0 || s > k - 1) return BigRat(0);
  if (m == k) return uniform_fixed_point_pmf_exact(k - 1, s);
  return detail::q_alternating_exact(k, m, s);
}

// P(max of the first j positions of a uniform permutation of [n] equals m)
//   = C(m-1, j-1) / C(n, j); zero for m < j.
inline double prefix_max_pmf(std::int64_t n, std::int64_t j, std::int64_t m) {
  if (j < 1 || j > n) throw std::invalid_argument("prefix length out of range");
  if (m < 1 || m > n) throw std::invalid_argument("maximum value out of range");
  if (m < j) return 0.0;
  // C(m-1, j-1)/C(n, j) = (j/n) * prod_{i=0}^{n-m-1} (n-j-i)/(n-1-i)
  double p = static_cast<double>(j) / static_cast<double>(n);
  for (std::int64_t i = 0; i < n - m; ++i)
    p *= static_cast<double>(n - j - i) / static_cast<double>(n - 1 - i);
  return p;
}

namespace detail {

// Shared skeleton of the finite-n fixed-point law
//   L = n - max(first k of pi) + #fixed(first k of pi),  k = floor(a*n):
//   P(L = l) = sum_{m=k}^{n} cond(m, l - n + m) * C(m-1, k-1)/C(n, k)
// where cond(m, s) is Q(k, m, s) for m > k and the full-permutation
// fixed-point law of [k] for m = k. Iterates over j = n - m with the
// prefix-max weight and the Q lead term updated incrementally.
inline std::vector<double> fixed_point_law_double(std::int64_t n, std::int64_t k) {
  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  double weight = static_cast<double>(k) / static_cast<double>(n);  // P(M = n - j)
  for (std::int64_t j = 0; j <= n - k; ++j) {
    if (weight < 1e-320) break;
    const std::int64_t m = n - j;
    if (m == k) {
      for (std::int64_t s = 0; s <= k && j + s <= n; ++s)
        law[static_cast<std::size_t>(j + s)] += weight * uniform_fixed_point_pmf(k, s);
    } else {
      double lead = 1.0;  // (k-1)_s / ((m-1)_s s!)
      for (std::int64_t s = 0; s <= k - 1 && j + s <= n; ++s) {
        double sum = 0.0, term = lead;
        for (std::int64_t t = s; t <= k - 1; ++t) {
          sum += term;
          term *= -static_cast<double>(k - 1 - t) /
                  (static_cast<double>(m - 1 - t) * static_cast<double>(t - s + 1));
          if (std::abs(term) < 1e-22 * std::max(1.0, std::abs(sum))) break;
        }
        law[static_cast<std::size_t>(j + s)] += weight * std::max(sum, 0.0);
        lead *= static_cast<double>(k - 1 - s) /
                (static_cast<double>(m - 1 - s) * static_cast<double>(s + 1));
        if (lead == 0.0) break;
      }
    }
    weight *= static_cast<double>(n - k - j) / static_cast<double>(n - 1 - j);
  }
  return law;
}

}  // namespace detail

inline std::int64_t index_count(std::int64_t n, double a) {
  if (!(a > 0.0) || a > 1.0) throw std::invalid_argument("index fraction must lie in (0, 1]");
  const auto k = static_cast<std::int64_t>(std::floor(a * static_cast<double>(n)));
  if (k < 1) throw std::invalid_argument("floor(a*n) must be at least 1");
  return k;
}

// Exact law for floor(a*n) <= 20 boxes; used to pin the small-n cases.
inline std::vector<BigRat> fixed_point_law_finite_exact(std::int64_t n, double a) {
  const std::int64_t k = index_count(n, a);
  std::vector<BigRat> law(static_cast<std::size_t>(n) + 1, BigRat(0));
  const BigInt denom = big_binomial(n, k);
  for (std::int64_t m = k; m <= n; ++m) {
    const BigRat weight(big_binomial(m - 1, k - 1), denom);
    if (m == k) {
      for (std::int64_t s = 0; s <= k; ++s) {
        const std::int64_t l = n - m + s;
        if (l >= 0 && l <= n)
          law[static_cast<std::size_t>(l)] += weight * uniform_fixed_point_pmf_exact(k, s);
      }
    } else {
      for (std::int64_t s = 0; s <= k - 1; ++s) {
        const std::int64_t l = n - m + s;
        if (l >= 0 && l <= n)
          law[static_cast<std::size_t>(l)] += weight * detail::q_alternating_exact(k, m, s);
      }
    }
  }
  return law;
}

// Exact PMF of L = n - (prefix max) + (prefix fixed points) over the first
// floor(a*n) positions of a uniform permutation of [n], indexed l = 0..n.
inline std::vector<double> fixed_point_law_finite(std::int64_t n, double a) {
  const std::int64_t k = index_count(n, a);
  if (k <= 20) {
    const std::vector<BigRat> exact = fixed_point_law_finite_exact(n, a);
    std::vector<double> law(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) law[i] = to_double(exact[i]);
    return law;
  }
  return detail::fixed_point_law_double(n, k);
}

}  // namespace rtt
