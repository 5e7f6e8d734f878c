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
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtt/limit_laws.hpp"

namespace rtt {

// Seeded Monte Carlo sample summary plus the goodness-of-fit and two-sample
// machinery the verification suites run on.

struct EmpiricalDistribution {
  // Configuration echo, sufficient to reproduce the sample.
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  std::string sampler;

  // Exactly one payload is populated: per-trial integer statistics in trial
  // order, or sorted standardized real samples.
  std::vector<std::int64_t> values;
  std::vector<double> reals;

  std::map<std::int64_t, std::int64_t> counts;  // multiplicities of `values`
  double mean = 0.0;
  double variance = 0.0;  // unbiased

  std::int64_t sample_count() const {
    return static_cast<std::int64_t>(values.empty() ? reals.size() : values.size());
  }
  bool integer_valued() const { return !values.empty(); }

  static EmpiricalDistribution from_values(std::vector<std::int64_t> v) {
    EmpiricalDistribution e;
    e.values = std::move(v);
    e.trials = static_cast<std::int64_t>(e.values.size());
    for (std::int64_t x : e.values) ++e.counts[x];
    double sum = 0.0;
    for (std::int64_t x : e.values) sum += static_cast<double>(x);
    e.mean = sum / static_cast<double>(e.values.size());
    double ss = 0.0;
    for (std::int64_t x : e.values) {
      const double d = static_cast<double>(x) - e.mean;
      ss += d * d;
    }
    e.variance = e.values.size() > 1 ? ss / static_cast<double>(e.values.size() - 1) : 0.0;
    return e;
  }

  static EmpiricalDistribution from_reals(std::vector<double> v) {
    EmpiricalDistribution e;
    e.reals = std::move(v);
    std::sort(e.reals.begin(), e.reals.end());
    e.trials = static_cast<std::int64_t>(e.reals.size());
    double sum = 0.0;
    for (double x : e.reals) sum += x;
    e.mean = sum / static_cast<double>(e.reals.size());
    double ss = 0.0;
    for (double x : e.reals) ss += (x - e.mean) * (x - e.mean);
    e.variance = e.reals.size() > 1 ? ss / static_cast<double>(e.reals.size() - 1) : 0.0;
    return e;
  }
};

// (v - center)/scale for every trial, carried over as a real-valued sample.
inline EmpiricalDistribution standardize(const EmpiricalDistribution& e, double center,
                                         double scale) {
  if (!e.integer_valued()) throw std::invalid_argument("already standardized");
  std::vector<double> v(e.values.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (static_cast<double>(e.values[i]) - center) / scale;
  EmpiricalDistribution out = EmpiricalDistribution::from_reals(std::move(v));
  out.n = e.n;
  out.r = e.r;
  out.seed = e.seed;
  out.statistic = e.statistic;
  out.sampler = e.sampler;
  return out;
}

struct Summary {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double mean_ci_lo = 0.0;  // mean +- 4 standard errors
  double mean_ci_hi = 0.0;
};

inline Summary summarize(const EmpiricalDistribution& e) {
  if (e.sample_count() < 2) throw std::invalid_argument("need at least two samples");
  Summary s;
  s.mean = e.mean;
  s.variance = e.variance;
  s.se_mean = std::sqrt(e.variance / static_cast<double>(e.sample_count()));
  s.mean_ci_lo = s.mean - 4.0 * s.se_mean;
  s.mean_ci_hi = s.mean + 4.0 * s.se_mean;
  return s;
}

namespace detail {

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise.
inline double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("bad incomplete gamma arguments");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, del = 1.0 / a, sum = del;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Lentz continued fraction.
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi_squared_survival(double stat, std::int64_t df) {
  if (df < 1) return 1.0;
  return std::min(1.0, std::max(0.0, gammq(static_cast<double>(df) / 2.0, stat / 2.0)));
}

// Kolmogorov limiting survival Q(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2).
inline double kolmogorov_survival(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * t * t);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

struct Cell {
  double observed = 0.0;
  double expected = 0.0;
};

// Pools cells left to right until each carries expected mass >= min_expected;
// a trailing light cell is merged backwards.
inline std::vector<Cell> pool_cells(const std::vector<Cell>& raw, double min_expected) {
  std::vector<Cell> pooled;
  Cell acc;
  for (const Cell& c : raw) {
    acc.observed += c.observed;
    acc.expected += c.expected;
    if (acc.expected >= min_expected) {
      pooled.push_back(acc);
      acc = Cell{};
    }
  }
  if (acc.expected > 0.0 || acc.observed > 0.0) {
    if (!pooled.empty()) {
      pooled.back().observed += acc.observed;
      pooled.back().expected += acc.expected;
    } else {
      pooled.push_back(acc);
    }
  }
  return pooled;
}

}  // namespace detail

// One verification result: the comparison that was run, the number it
// produced, and the bar it was held to.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;  // meaning depends on the test: p-value floor or max statistic
  double p_value = -1.0;   // -1 when the test has no p-value
  bool pass = false;
  std::int64_t df = 0;
  // Configuration echo.
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline void echo_config(TestReport& rep, const EmpiricalDistribution& e) {
  rep.n = e.n;
  rep.r = e.r;
  rep.trials = e.sample_count();
  rep.seed = e.seed;
}

}  // namespace detail

enum class GofKind { Chi2, Ks, Tv };

inline GofKind parse_gof_kind(const std::string& s) {
  if (s == "chi2") return GofKind::Chi2;
  if (s == "ks") return GofKind::Ks;
  if (s == "tv") return GofKind::Tv;
  throw std::invalid_argument("unknown test kind: " + s);
}

// Chi-square GOF against a discrete law; cells pooled so every expected
// count is at least 5. Pass means p > threshold.
inline TestReport gof_chi2(const EmpiricalDistribution& e, const LimitLaw& law,
                           double p_floor = 0.001) {
  if (!law.discrete()) throw std::invalid_argument("chi2 requires a discrete law");
  if (!e.integer_valued()) throw std::invalid_argument("chi2 requires integer samples");
  const double total = static_cast<double>(e.sample_count());
  const std::int64_t lo = std::min<std::int64_t>(0, e.counts.begin()->first);
  const std::int64_t hi = std::max(law.support_cutoff(), e.counts.rbegin()->first);
  std::vector<detail::Cell> raw;
  double cum = 0.0;
  for (std::int64_t v = lo; v <= hi; ++v) {
    detail::Cell c;
    const auto it = e.counts.find(v);
    c.observed = it == e.counts.end() ? 0.0 : static_cast<double>(it->second);
    c.expected = law.pmf(v) * total;
    cum += law.pmf(v);
    raw.push_back(c);
  }
  raw.push_back({0.0, std::max(0.0, 1.0 - cum) * total});  // upper tail
  const std::vector<detail::Cell> cells = detail::pool_cells(raw, 5.0);
  double stat = 0.0;
  for (const detail::Cell& c : cells)
    if (c.expected > 0.0) stat += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
  TestReport rep;
  rep.name = "chi2-gof vs " + law.name();
  rep.statistic = stat;
  rep.df = static_cast<std::int64_t>(cells.size()) - 1;
  rep.p_value = detail::chi_squared_survival(stat, rep.df);
  rep.threshold = p_floor;
  rep.pass = rep.p_value > p_floor;
  detail::echo_config(rep, e);
  return rep;
}

// One-sample KS of standardized samples against a continuous law. Pass
// means statistic < threshold; the asymptotic p-value is reported alongside.
inline TestReport gof_ks(const EmpiricalDistribution& e, const LimitLaw& law,
                         double max_statistic) {
  if (law.discrete()) throw std::invalid_argument("ks requires a continuous target");
  if (e.integer_valued())
    throw std::invalid_argument("ks applies to standardized samples; standardize first");
  const std::size_t m = e.reals.size();
  if (m == 0) throw std::invalid_argument("empty sample");
  double d = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = law.cdf(e.reals[i]);
    d = std::max(d, f - static_cast<double>(i) / static_cast<double>(m));
    d = std::max(d, static_cast<double>(i + 1) / static_cast<double>(m) - f);
  }
  TestReport rep;
  rep.name = "ks-gof vs " + law.name();
  rep.statistic = d;
  const double sn = std::sqrt(static_cast<double>(m));
  rep.p_value = detail::kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
  rep.threshold = max_statistic;
  rep.pass = d < max_statistic;
  detail::echo_config(rep, e);
  return rep;
}

// Total variation distance (1/2) sum |phat - p| against a discrete law.
// Pass means distance < threshold.
inline TestReport gof_tv(const EmpiricalDistribution& e, const LimitLaw& law,
                         double max_distance) {
  if (!law.discrete()) throw std::invalid_argument("tv requires a discrete law");
  if (!e.integer_valued()) throw std::invalid_argument("tv requires integer samples");
  const double total = static_cast<double>(e.sample_count());
  const std::int64_t lo = std::min<std::int64_t>(0, e.counts.begin()->first);
  const std::int64_t hi = std::max(law.support_cutoff(), e.counts.rbegin()->first);
  double dist = 0.0, cum = 0.0;
  for (std::int64_t v = lo; v <= hi; ++v) {
    const auto it = e.counts.find(v);
    const double phat = it == e.counts.end() ? 0.0 : static_cast<double>(it->second) / total;
    const double p = law.pmf(v);
    cum += p;
    dist += std::abs(phat - p);
  }
  dist += std::max(0.0, 1.0 - cum);  // law mass beyond the evaluated range
  TestReport rep;
  rep.name = "tv vs " + law.name();
  rep.statistic = 0.5 * dist;
  rep.threshold = max_distance;
  rep.pass = rep.statistic < max_distance;
  detail::echo_config(rep, e);
  return rep;
}

inline TestReport gof_test(const EmpiricalDistribution& e, const LimitLaw& law, GofKind kind,
                           double threshold) {
  if (e.sample_count() == 0) throw std::invalid_argument("empty sample");
  switch (kind) {
    case GofKind::Chi2: return gof_chi2(e, law, threshold);
    case GofKind::Ks: return gof_ks(e, law, threshold);
    case GofKind::Tv: return gof_tv(e, law, threshold);
  }
  throw std::invalid_argument("unknown test kind");
}

enum class TwoSampleKind { Chi2, Ks };

// Two-sample chi-square on pooled cells (every pooled expected count >= 5 on
// both sides). Pass means p > p_floor.
inline TestReport two_sample_chi2(const EmpiricalDistribution& e1,
                                  const EmpiricalDistribution& e2, double p_floor = 0.001) {
  if (!e1.integer_valued() || !e2.integer_valued())
    throw std::invalid_argument("two-sample chi2 requires integer samples");
  const double n1 = static_cast<double>(e1.sample_count());
  const double n2 = static_cast<double>(e2.sample_count());
  const std::int64_t lo = std::min(e1.counts.begin()->first, e2.counts.begin()->first);
  const std::int64_t hi = std::max(e1.counts.rbegin()->first, e2.counts.rbegin()->first);
  // Pool on the smaller side's expected counts; both sides scale together.
  struct Pair {
    double o1 = 0.0, o2 = 0.0;
  };
  std::vector<Pair> pooled;
  Pair acc;
  const double frac = std::min(n1, n2) / (n1 + n2);
  for (std::int64_t v = lo; v <= hi; ++v) {
    const auto i1 = e1.counts.find(v);
    const auto i2 = e2.counts.find(v);
    acc.o1 += i1 == e1.counts.end() ? 0.0 : static_cast<double>(i1->second);
    acc.o2 += i2 == e2.counts.end() ? 0.0 : static_cast<double>(i2->second);
    if ((acc.o1 + acc.o2) * frac >= 5.0) {
      pooled.push_back(acc);
      acc = Pair{};
    }
  }
  if (acc.o1 + acc.o2 > 0.0) {
    if (pooled.empty()) throw std::invalid_argument("incompatible supports after pooling");
    pooled.back().o1 += acc.o1;
    pooled.back().o2 += acc.o2;
  }
  if (pooled.size() < 2) throw std::invalid_argument("incompatible supports after pooling");
  double stat = 0.0;
  for (const Pair& c : pooled) {
    const double tot = c.o1 + c.o2;
    const double ex1 = n1 * tot / (n1 + n2);
    const double ex2 = n2 * tot / (n1 + n2);
    stat += (c.o1 - ex1) * (c.o1 - ex1) / ex1 + (c.o2 - ex2) * (c.o2 - ex2) / ex2;
  }
  TestReport rep;
  rep.name = "two-sample chi2";
  rep.statistic = stat;
  rep.df = static_cast<std::int64_t>(pooled.size()) - 1;
  rep.p_value = detail::chi_squared_survival(stat, rep.df);
  rep.threshold = p_floor;
  rep.pass = rep.p_value > p_floor;
  detail::echo_config(rep, e1);
  return rep;
}

// Two-sample KS with the asymptotic p-value. Ties (integer data) make the
// test conservative, which only strengthens a pass at the stated floor.
inline TestReport two_sample_ks(const EmpiricalDistribution& e1,
                                const EmpiricalDistribution& e2, double p_floor = 0.001) {
  if (!e1.integer_valued() || !e2.integer_valued())
    throw std::invalid_argument("two-sample ks requires integer samples");
  std::vector<std::int64_t> a = e1.values, b = e2.values;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  TestReport rep;
  rep.name = "two-sample ks";
  rep.statistic = d;
  const double ne = n1 * n2 / (n1 + n2);
  const double sn = std::sqrt(ne);
  rep.p_value = detail::kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
  rep.threshold = p_floor;
  rep.pass = rep.p_value > p_floor;
  detail::echo_config(rep, e1);
  return rep;
}

inline TestReport two_sample_test(const EmpiricalDistribution& e1,
                                  const EmpiricalDistribution& e2, TwoSampleKind kind,
                                  double p_floor = 0.001) {
  if (e1.sample_count() == 0 || e2.sample_count() == 0)
    throw std::invalid_argument("empty sample");
  return kind == TwoSampleKind::Chi2 ? two_sample_chi2(e1, e2, p_floor)
                                     : two_sample_ks(e1, e2, p_floor);
}

}  // namespace rtt
