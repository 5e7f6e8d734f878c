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

#include <boost/multiprecision/cpp_int.hpp>

namespace rtt {

// Arbitrary-precision integers and rationals back the exact arithmetic paths
// (small-parameter PMFs, alternating sums, enumeration cross-checks).
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& q) { return q.convert_to<double>(); }

inline BigInt big_pow(BigInt base, std::int64_t e) {
  BigInt out = 1;
  for (std::int64_t i = 0; i < e; ++i) out *= base;
  return out;
}

inline BigInt big_factorial(std::int64_t m) {
  BigInt out = 1;
  for (std::int64_t i = 2; i <= m; ++i) out *= i;
  return out;
}

inline BigInt big_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

}  // namespace rtt
