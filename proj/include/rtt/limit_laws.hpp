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
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace rtt {

// Limiting distributions in the critical regime r = c*n and the mixed
// regimes, plus the randomly-indexed CLT variance transfer. All limit
// parameters are exposed as coefficients of n (or n^2): callers standardize
// explicitly, nothing scales behind their back.

// P(X + Y = l) for independent X ~ Poisson(a) and zero-indexed Geometric(a)
// with a = 1 - e^{-c}:
//   sum_{j=0}^{l} a(1-a)^j e^{-a} a^{l-j} / (l-j)!.
inline double poisson_geometric_pmf(double c, std::int64_t l) {
  if (!(c > 0.0)) throw std::invalid_argument("shuffle ratio c must be positive");
  if (l < 0) return 0.0;
  const double a = -std::expm1(-c);
  double sum = 0.0;
  for (std::int64_t j = 0; j <= l; ++j) {
    const std::int64_t p = l - j;
    // log(1-a) is -c identically, so large c never underflows to a NaN.
    const double logterm = std::log(a) - c * static_cast<double>(j) - a +
                           static_cast<double>(p) * std::log(a) -
                           std::lgamma(static_cast<double>(p) + 1.0);
    sum += std::exp(logterm);
  }
  return sum;
}

inline double poisson_pmf(double rate, std::int64_t l) {
  if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
  if (l < 0) return 0.0;
  return std::exp(-rate + static_cast<double>(l) * std::log(rate) -
                  std::lgamma(static_cast<double>(l) + 1.0));
}

// Normal CDF through erfc; absolute error well below 1e-10.
inline double normal_cdf(double x, double mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

// Descent limit in the critical regime: coefficients (of n) for the
// centering n(1-e^{-c})/2 and the variance n(1+2e^{-c}-3(1+c)e^{-2c})/12.
inline std::pair<double, double> descents_limit_params(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("shuffle ratio c must be positive");
  const double e1 = std::exp(-c);
  const double mean_coeff = (1.0 - e1) / 2.0;
  const double var_coeff = (1.0 + 2.0 * e1 - 3.0 * (1.0 + c) * e1 * e1) / 12.0;
  return {mean_coeff, var_coeff};
}

// Inversion limit in the critical regime: centering coefficient of n^2 is
// (1-e^{-2c})/4, variance coefficient of n^3 is (1+8e^{-3c}-9(1+c)e^{-4c})/36.
inline std::pair<double, double> inversions_limit_params(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("shuffle ratio c must be positive");
  const double e1 = std::exp(-c);
  const double mean_coeff = (1.0 - e1 * e1) / 4.0;
  const double var_coeff =
      (1.0 + 8.0 * e1 * e1 * e1 - 9.0 * (1.0 + c) * e1 * e1 * e1 * e1) / 36.0;
  return {mean_coeff, var_coeff};
}

// Variance transfer for sums indexed by a random K_n with K_n/n -> a and
// n^{-1/2}(K_n - E K_n) => N(0, tau^2):
//   descents:   a/12 + tau^2/4
//   inversions: (1-(1-a)^3)/36 + (1-a)^2 tau^2/4
// Feeding the occupancy coefficients a = 1-e^{-c}, tau^2 = e^{-c}-(1+c)e^{-2c}
// reproduces the critical-regime variances above.
inline std::pair<double, double> general_clt_variance(double a, double tau2) {
  if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("index fraction must lie in (0, 1)");
  if (tau2 < 0.0) throw std::invalid_argument("index variance must be nonnegative");
  const double b = 1.0 - a;
  const double descents = a / 12.0 + tau2 / 4.0;
  const double inversions = (1.0 - b * b * b) / 36.0 + b * b * tau2 / 4.0;
  return {descents, inversions};
}

// Target distribution descriptor: Poisson-geometric(c), Normal(mean, var),
// or Poisson(rate).
struct LimitLaw {
  enum class Kind { PoissonGeometric, Normal, Poisson };

  Kind kind = Kind::Poisson;
  double c = 0.0;        // Poisson-geometric
  double mean = 0.0;     // Normal
  double variance = 0.0; // Normal
  double rate = 0.0;     // Poisson

  static LimitLaw poisson_geometric(double c_) {
    if (!(c_ > 0.0)) throw std::invalid_argument("shuffle ratio c must be positive");
    LimitLaw law;
    law.kind = Kind::PoissonGeometric;
    law.c = c_;
    return law;
  }
  static LimitLaw normal(double mean_, double variance_) {
    if (!(variance_ > 0.0)) throw std::invalid_argument("variance must be positive");
    LimitLaw law;
    law.kind = Kind::Normal;
    law.mean = mean_;
    law.variance = variance_;
    return law;
  }
  static LimitLaw poisson(double rate_) {
    if (!(rate_ > 0.0)) throw std::invalid_argument("rate must be positive");
    LimitLaw law;
    law.kind = Kind::Poisson;
    law.rate = rate_;
    return law;
  }

  bool discrete() const { return kind != Kind::Normal; }

  double pmf(std::int64_t l) const {
    switch (kind) {
      case Kind::PoissonGeometric: return poisson_geometric_pmf(c, l);
      case Kind::Poisson: return poisson_pmf(rate, l);
      case Kind::Normal: break;
    }
    throw std::invalid_argument("pmf undefined for a continuous law");
  }

  double cdf(double x) const {
    if (kind == Kind::Normal) return normal_cdf(x, mean, variance);
    double sum = 0.0;
    for (std::int64_t l = 0; l <= static_cast<std::int64_t>(std::floor(x)); ++l) sum += pmf(l);
    return std::min(sum, 1.0);
  }

  // Smallest L with tail mass beyond L below eps; PMF evaluation in reports
  // is capped here.
  std::int64_t support_cutoff(double eps = 1e-12) const {
    if (kind == Kind::Normal) throw std::invalid_argument("cutoff undefined for a continuous law");
    double cum = 0.0;
    std::int64_t l = 0;
    for (; l < 100000; ++l) {
      const double p = pmf(l);
      cum += p;
      if (1.0 - cum < eps) break;
      // Past the mode the tail decays at least geometrically; once the pmf
      // drops this far below eps the accumulated CDF cannot move anymore.
      if (cum > 0.5 && p < eps * 1e-6) break;
    }
    return l;
  }

  std::string name() const {
    char buf[64];
    switch (kind) {
      case Kind::PoissonGeometric:
        std::snprintf(buf, sizeof buf, "poisson-geometric(c=%g)", c);
        break;
      case Kind::Normal:
        std::snprintf(buf, sizeof buf, "normal(%g,%g)", mean, variance);
        break;
      case Kind::Poisson:
        std::snprintf(buf, sizeof buf, "poisson(%g)", rate);
        break;
    }
    return buf;
  }
};

}  // namespace rtt
