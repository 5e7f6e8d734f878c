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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "rtt/limit_laws.hpp"
#include "rtt/occupancy.hpp"

namespace {

using namespace rtt;
using Catch::Matchers::WithinAbs;

// Independent route to the Poisson-geometric pmf: convolve the two marginal
// pmfs computed separately.
double pg_convolution_oracle(double c, std::int64_t l) {
  const double a = 1.0 - std::exp(-c);
  double sum = 0.0;
  for (std::int64_t y = 0; y <= l; ++y) {
    const double geo = a * std::pow(1.0 - a, static_cast<double>(y));
    double poi = std::exp(-a);
    for (std::int64_t i = 1; i <= l - y; ++i) poi *= a / static_cast<double>(i);
    sum += geo * poi;
  }
  return sum;
}

TEST_CASE("poisson-geometric pmf", "[limits]") {
  for (double c : {0.3, 1.0, 2.5}) {
    const double a = 1.0 - std::exp(-c);
    CHECK_THAT(poisson_geometric_pmf(c, 0), WithinAbs(a * std::exp(-a), 1e-14));
  }
  CHECK_THAT(poisson_geometric_pmf(1.0, 0), WithinAbs(0.33594907123402756, 1e-14));
  for (std::int64_t l = 0; l <= 25; ++l)
    CHECK_THAT(poisson_geometric_pmf(1.0, l), WithinAbs(pg_convolution_oracle(1.0, l), 1e-13));
  // Large c degenerates the geometric at zero, leaving Poisson(1).
  CHECK_THAT(poisson_geometric_pmf(50.0, 0), WithinAbs(std::exp(-1.0), 1e-10));
  CHECK(poisson_geometric_pmf(1.0, -3) == 0.0);
  CHECK_THROWS_AS(poisson_geometric_pmf(0.0, 1), std::invalid_argument);
}

TEST_CASE("poisson-geometric normalization and moments", "[limits]") {
  for (double c : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const LimitLaw law = LimitLaw::poisson_geometric(c);
    // Moment sums need a deeper cutoff than the pmf itself: the second
    // moment weights the tail by l^2.
    const std::int64_t cutoff = std::max<std::int64_t>(400, 2 * law.support_cutoff(1e-15));
    double total = 0.0, mean = 0.0, m2 = 0.0;
    for (std::int64_t l = 0; l <= cutoff; ++l) {
      const double p = poisson_geometric_pmf(c, l);
      total += p;
      mean += static_cast<double>(l) * p;
      m2 += static_cast<double>(l) * static_cast<double>(l) * p;
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-10));
    // Limiting mean 1-e^{-c} + (e^c-1)^{-1}, variance 1-e^{-c} + e^c(e^c-1)^{-2}.
    const double ec = std::exp(c);
    REQUIRE_THAT(mean, WithinAbs(1.0 - std::exp(-c) + 1.0 / (ec - 1.0), 1e-8));
    REQUIRE_THAT(m2 - mean * mean,
                 WithinAbs(1.0 - std::exp(-c) + ec / ((ec - 1.0) * (ec - 1.0)), 1e-8));
  }
}

TEST_CASE("descents limit parameters", "[limits]") {
  const auto [m1, v1] = descents_limit_params(1.0);
  CHECK_THAT(m1, WithinAbs(0.31606027941427884, 1e-15));
  CHECK_THAT(v1, WithinAbs(0.07697893191026737, 1e-15));
  const auto [minf, vinf] = descents_limit_params(60.0);
  CHECK_THAT(minf, WithinAbs(0.5, 1e-12));
  CHECK_THAT(vinf, WithinAbs(1.0 / 12.0, 1e-12));
  const auto [m0, v0] = descents_limit_params(1e-9);
  CHECK_THAT(m0, WithinAbs(0.0, 1e-9));
  CHECK_THAT(v0, WithinAbs(0.0, 1e-9));
  CHECK_THROWS_AS(descents_limit_params(0.0), std::invalid_argument);
}

TEST_CASE("inversions limit parameters", "[limits]") {
  const auto [m1, v1] = inversions_limit_params(1.0);
  CHECK_THAT(m1, WithinAbs(0.21616617919084683, 1e-15));
  CHECK_THAT(v1, WithinAbs(0.029683751304047119, 1e-15));
  const auto [minf, vinf] = inversions_limit_params(60.0);
  CHECK_THAT(minf, WithinAbs(0.25, 1e-12));
  CHECK_THAT(vinf, WithinAbs(1.0 / 36.0, 1e-12));
  const auto [m0, v0] = inversions_limit_params(1e-9);
  CHECK_THAT(m0, WithinAbs(0.0, 1e-8));
  CHECK_THAT(v0, WithinAbs(0.0, 1e-8));
  CHECK_THROWS_AS(inversions_limit_params(-2.0), std::invalid_argument);
}

TEST_CASE("general variance transfer", "[limits]") {
  for (double a : {0.2, 0.5, 0.9}) {
    const auto [d, i] = general_clt_variance(a, 0.0);
    CHECK_THAT(d, WithinAbs(a / 12.0, 1e-15));
    CHECK_THAT(i, WithinAbs((1.0 - std::pow(1.0 - a, 3)) / 36.0, 1e-15));
  }
  // Feeding the occupancy coefficients reproduces the critical-regime
  // variances identically.
  for (int step = 0; step < 20; ++step) {
    const double c = 0.05 + static_cast<double>(step) * (10.0 - 0.05) / 19.0;
    const auto [a, tau2] = occupied_clt_params(c);
    const auto [vd, vi] = general_clt_variance(a, tau2);
    REQUIRE_THAT(vd, WithinAbs(descents_limit_params(c).second, 1e-12));
    REQUIRE_THAT(vi, WithinAbs(inversions_limit_params(c).second, 1e-12));
  }
  const auto [vd1, vi1] = general_clt_variance(1.0 - std::exp(-1.0), 0.09720887469821694);
  CHECK_THAT(vd1, WithinAbs(0.07697893191026737, 1e-12));
  CHECK_THAT(vi1, WithinAbs(0.029683751304047119, 1e-12));
  CHECK_THROWS_AS(general_clt_variance(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(general_clt_variance(1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(general_clt_variance(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("poisson reference pmf", "[limits]") {
  CHECK_THAT(poisson_pmf(1.0, 0), WithinAbs(std::exp(-1.0), 1e-15));
  CHECK_THAT(poisson_pmf(1.0, 3), WithinAbs(std::exp(-1.0) / 6.0, 1e-15));
  CHECK_THROWS_AS(poisson_pmf(0.0, 1), std::invalid_argument);
}

TEST_CASE("normal reference cdf", "[limits]") {
  CHECK_THAT(normal_cdf(2.0, 2.0, 9.0), WithinAbs(0.5, 1e-15));
  // One standard deviation above the mean; standard table value recomputed
  // below by Simpson integration of the density.
  CHECK_THAT(normal_cdf(5.0, 2.0, 9.0), WithinAbs(0.8413447460685429, 1e-12));
  CHECK_THROWS_AS(normal_cdf(0.0, 0.0, 0.0), std::invalid_argument);

  // Numeric-integration oracle: integrate the standard density over
  // [-12, x] with Simpson's rule.
  const auto simpson_cdf = [](double x) {
    const double lo = -12.0;
    const int steps = 48000;  // even
    const double h = (x - lo) / steps;
    const auto dens = [](double t) {
      return std::exp(-0.5 * t * t) / std::sqrt(8.0 * std::atan(1.0));
    };
    double sum = dens(lo) + dens(x);
    for (int i = 1; i < steps; ++i) sum += dens(lo + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  };
  for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5})
    REQUIRE_THAT(normal_cdf(x, 0.0, 1.0), WithinAbs(simpson_cdf(x), 1e-10));
}

TEST_CASE("limit law descriptor", "[limits]") {
  const LimitLaw pg = LimitLaw::poisson_geometric(1.0);
  CHECK(pg.discrete());
  CHECK_THAT(pg.pmf(0), WithinAbs(0.33594907123402756, 1e-14));
  CHECK(pg.support_cutoff(1e-12) < 60);
  const LimitLaw nrm = LimitLaw::normal(0.0, 1.0);
  CHECK(!nrm.discrete());
  CHECK_THROWS_AS(nrm.pmf(0), std::invalid_argument);
  CHECK_THROWS_AS(nrm.support_cutoff(), std::invalid_argument);
  CHECK_THAT(LimitLaw::poisson(1.0).cdf(0.5), WithinAbs(std::exp(-1.0), 1e-14));
  CHECK_THROWS_AS(LimitLaw::normal(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LimitLaw::poisson(-1.0), std::invalid_argument);
}

}  // namespace
