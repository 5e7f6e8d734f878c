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
#include <string>
#include <vector>

#include "rtt/exact.hpp"
#include "rtt/harness.hpp"
#include "rtt/limit_laws.hpp"
#include "rtt/shuffle.hpp"
#include "rtt/stats.hpp"

namespace rtt {

// Verification suites: exhaustive small-deck enumeration against the closed
// forms, two-sample equality-in-distribution checks for the decomposition
// samplers, and the histogram-figure reproductions with their thresholds.

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Visits every one of the n^r selection sequences exactly once.
template <class F>
void for_each_selection_sequence(std::int64_t n, std::int64_t r, F&& f) {
  SelectionSequence s;
  s.n = n;
  s.picks.assign(static_cast<std::size_t>(r), 1);
  for (;;) {
    f(static_cast<const SelectionSequence&>(s));
    std::int64_t i = 0;
    for (; i < r; ++i) {
      auto& p = s.picks[static_cast<std::size_t>(i)];
      if (p < n) {
        ++p;
        break;
      }
      p = 1;
    }
    if (i == r) break;
  }
}

namespace detail {

inline std::string format_check(const char* fmt, double got, double bound) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, got, bound);
  return buf;
}

}  // namespace detail

// Exhausts all n^r selection sequences and compares, in integer arithmetic
// over the common denominator n^r: the fixed-point and inversion
// expectations, every per-card return probability, and the full occupancy
// PMF. Exact equality, no tolerance.
inline std::vector<CheckResult> brute_force_checks(std::int64_t n, std::int64_t r) {
  BigInt sum_fixed = 0, sum_inversions = 0;
  std::vector<BigInt> returns(static_cast<std::size_t>(n) + 1, BigInt(0));
  std::vector<BigInt> hist_k(static_cast<std::size_t>(n) + 1, BigInt(0));
  for_each_selection_sequence(n, r, [&](const SelectionSequence& s) {
    const ShuffleOutcome out = apply_naive(s);
    sum_fixed += count_fixed_points(out.deck);
    sum_inversions += count_inversions(out.deck);
    ++hist_k[static_cast<std::size_t>(out.distinct_selected)];
    for (std::int64_t k = 1; k <= n; ++k)
      if (out.deck.at(k) == k) ++returns[static_cast<std::size_t>(k)];
  });

  std::vector<CheckResult> results;
  const BigInt total = big_pow(n, r);

  // E[F] = 1 + sum_{k=0}^{n-2} (k/n)^r, over denominator n^r.
  BigInt efix_num = total;
  for (std::int64_t k = 0; k <= n - 2; ++k) efix_num += big_pow(k, r);
  results.push_back({"expected-fixed-points n=" + std::to_string(n) + " r=" + std::to_string(r),
                     sum_fixed == efix_num, "enumerated vs closed form, exact"});

  // E[I] = (C(n,2)/2)(1 - ((n-2)/n)^r): 2*sum == C(n,2)(n^r - (n-2)^r).
  const BigInt einv_rhs =
      n < 2 ? BigInt(0) : big_binomial(n, 2) * (total - big_pow(std::max<std::int64_t>(n - 2, 0), r));
  results.push_back({"expected-inversions n=" + std::to_string(n) + " r=" + std::to_string(r),
                     2 * sum_inversions == einv_rhs, "enumerated vs closed form, exact"});

  // Occupancy PMF: histogram of distinct counts equals the recurrence weights.
  const std::vector<BigInt> w = occupied_weights(n, r);
  bool pmf_ok = true;
  for (std::size_t k = 0; k < w.size(); ++k) pmf_ok = pmf_ok && w[k] == hist_k[k];
  results.push_back({"occupancy-pmf n=" + std::to_string(n) + " r=" + std::to_string(r), pmf_ok,
                     "enumerated vs recurrence, exact"});

  // P(W_k) = ((k-1)/n)^r + P(K >= k)/n: count*n == (k-1)^r*n + tail_k.
  bool returns_ok = true;
  for (std::int64_t k = 1; k <= n; ++k) {
    BigInt tail = 0;
    for (std::int64_t i = k; i <= n; ++i) tail += w[static_cast<std::size_t>(i)];
    const BigInt rhs = big_pow(k - 1, r) * n + tail;
    returns_ok = returns_ok && returns[static_cast<std::size_t>(k)] * n == rhs;
  }
  results.push_back({"return-probabilities n=" + std::to_string(n) + " r=" + std::to_string(r),
                     returns_ok, "enumerated vs closed form, exact"});
  return results;
}

inline std::vector<CheckResult> brute_force_suite(std::int64_t max_n, std::int64_t max_r) {
  std::vector<CheckResult> all;
  for (std::int64_t n = 1; n <= max_n; ++n)
    for (std::int64_t r = 0; r <= max_r; ++r)
      for (CheckResult& c : brute_force_checks(n, r)) all.push_back(std::move(c));
  return all;
}

// Seed offset separating the engine sample from the decomposed sample; the
// two sides of a two-sample test must not share substreams.
inline constexpr std::uint64_t kPairedSampleOffset = 0x517cc1b727220a95ull;

// Equality in distribution of the decomposition samplers against the shuffle
// engine: fixed points (chi-square), descents via the resampled channel
// (chi-square), inversions (KS).
inline std::vector<TestReport> decomposition_suite(std::int64_t n, std::int64_t r,
                                                   std::int64_t trials, std::uint64_t seed,
                                                   int workers = 0) {
  std::vector<TestReport> reports;
  const auto run = [&](Statistic stat, Sampler sampler, std::uint64_t s) {
    return run_experiment({n, r, trials, stat, sampler, s, workers});
  };
  {
    TestReport rep =
        two_sample_chi2(run(Statistic::FixedPoints, Sampler::ShuffleEngine, seed),
                        run(Statistic::FixedPoints, Sampler::FormulaDirect, seed + kPairedSampleOffset));
    rep.name = "fixed-points engine vs decomposed, " + rep.name;
    reports.push_back(rep);
  }
  {
    TestReport rep =
        two_sample_chi2(run(Statistic::Descents, Sampler::ShuffleEngine, seed),
                        run(Statistic::Descents, Sampler::Resampled, seed + kPairedSampleOffset));
    rep.name = "descents engine vs resampled deck, " + rep.name;
    reports.push_back(rep);
  }
  {
    TestReport rep =
        two_sample_ks(run(Statistic::Inversions, Sampler::ShuffleEngine, seed),
                      run(Statistic::Inversions, Sampler::FormulaDirect, seed + kPairedSampleOffset));
    rep.name = "inversions engine vs decomposed, " + rep.name;
    reports.push_back(rep);
  }
  return reports;
}

// Shuffle-count schedules. "log" is the natural logarithm; the mixed-regime
// sequence c_n is realized as ln ln n.
inline std::int64_t critical_shuffles(std::int64_t n, double c) {
  return std::llround(c * static_cast<double>(n));
}

inline std::int64_t mixed_shuffles(Statistic statistic, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double lnn = std::log(nd);
  switch (statistic) {
    case Statistic::FixedPoints: return static_cast<std::int64_t>(std::ceil(nd * lnn));
    case Statistic::Descents:
      return static_cast<std::int64_t>(std::ceil(nd * lnn / 2.0 + nd * std::log(lnn)));
    case Statistic::Inversions:
      return static_cast<std::int64_t>(std::ceil(nd * lnn / 4.0 + nd * std::log(lnn)));
  }
  throw std::invalid_argument("unknown statistic");
}

// Centering and scale used to standardize a statistic in the critical
// regime. Inversions center on the exact finite-n expectation; descents on
// the asymptotic n(1-e^{-c})/2 (the only centering available). Both choices
// are echoed into reports.
struct Standardization {
  double center = 0.0;
  double scale = 1.0;
  std::string centering;  // "exact" or "asymptotic"
};

inline Standardization critical_standardization(Statistic statistic, std::int64_t n,
                                                std::int64_t r, double c) {
  const double nd = static_cast<double>(n);
  switch (statistic) {
    case Statistic::Descents: {
      const auto [mc, vc] = descents_limit_params(c);
      return {nd * mc, std::sqrt(nd * vc), "asymptotic"};
    }
    case Statistic::Inversions: {
      const auto [mc, vc] = inversions_limit_params(c);
      (void)mc;
      return {expected_inversions(n, r), std::sqrt(nd * nd * nd * vc), "exact"};
    }
    case Statistic::FixedPoints: break;
  }
  throw std::invalid_argument("fixed points are compared by PMF, not standardized");
}

inline Standardization mixed_standardization(Statistic statistic, std::int64_t n) {
  const double nd = static_cast<double>(n);
  switch (statistic) {
    case Statistic::Descents: return {nd / 2.0, std::sqrt(nd / 12.0), "asymptotic"};
    case Statistic::Inversions:
      return {nd * nd / 4.0, std::sqrt(nd * nd * nd / 36.0), "asymptotic"};
    case Statistic::FixedPoints: break;
  }
  throw std::invalid_argument("fixed points are compared by PMF, not standardized");
}

// Figure reproduction experiments. Panel index is 0 = top, 1 = middle,
// 2 = bottom, matching the three shuffle counts per figure.
struct FigurePanel {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t trials = 0;
  double c = 0.0;
  Statistic statistic = Statistic::FixedPoints;
};

inline FigurePanel figure_panel(int figure, int panel) {
  if (panel < 0 || panel > 2) throw std::invalid_argument("panel must be 0, 1, or 2");
  switch (figure) {
    case 1: {
      const double cs[3] = {0.5, 1.0, 2.0};
      return {10000, critical_shuffles(10000, cs[panel]), 2000, cs[panel],
              Statistic::FixedPoints};
    }
    case 2: {
      const double cs[3] = {0.25, 0.5, 1.0};
      return {10000, critical_shuffles(10000, cs[panel]), 2000, cs[panel], Statistic::Descents};
    }
    case 3: {
      const double cs[3] = {0.1, 0.25, 1.0};
      return {1000, critical_shuffles(1000, cs[panel]), 1000, cs[panel], Statistic::Inversions};
    }
    default: throw std::invalid_argument("figure must be 1, 2, or 3");
  }
}

// Baked seeds for the figure-reproduction and mixed-regime experiments.
inline constexpr std::uint64_t kFigureSeed = 20260809;

// Histogram-figure reproduction with the stated thresholds. Fixed points:
// TV against the Poisson-geometric target (< 0.06), plus Poisson(1) on the
// bottom panel. Descents: mean within 4 SE, variance within 15%, KS of
// standardized samples < 0.04. Inversions: KS < 0.06 and mean within 4 SE.
inline std::vector<TestReport> figure_checks(int figure, int panel, std::uint64_t seed = kFigureSeed,
                                             int workers = 0) {
  const FigurePanel p = figure_panel(figure, panel);
  const ExperimentSpec spec{p.n, p.r, p.trials, p.statistic, Sampler::ShuffleEngine,
                            seed + static_cast<std::uint64_t>(panel), workers};
  const EmpiricalDistribution e = run_experiment(spec);
  std::vector<TestReport> reports;
  const double nd = static_cast<double>(p.n);
  if (figure == 1) {
    reports.push_back(gof_tv(e, LimitLaw::poisson_geometric(p.c), 0.06));
    if (panel == 2) reports.push_back(gof_tv(e, LimitLaw::poisson(1.0), 0.06));
    return reports;
  }
  const Summary s = summarize(e);
  const Standardization std_ = critical_standardization(p.statistic, p.n, p.r, p.c);
  if (figure == 2) {
    const auto [mc, vc] = descents_limit_params(p.c);
    TestReport mean_rep;
    mean_rep.name = "descents mean vs n(1-e^-c)/2";
    mean_rep.statistic = std::abs(s.mean - nd * mc) / s.se_mean;
    mean_rep.threshold = 4.0;
    mean_rep.pass = mean_rep.statistic < 4.0;
    detail::echo_config(mean_rep, e);
    reports.push_back(mean_rep);

    TestReport var_rep;
    var_rep.name = "descents variance vs n(1+2e^-c-3(1+c)e^-2c)/12";
    var_rep.statistic = std::abs(s.variance / (nd * vc) - 1.0);
    var_rep.threshold = 0.15;
    var_rep.pass = var_rep.statistic < 0.15;
    detail::echo_config(var_rep, e);
    reports.push_back(var_rep);

    reports.push_back(gof_ks(standardize(e, std_.center, std_.scale),
                             LimitLaw::normal(0.0, 1.0), 0.04));
    return reports;
  }
  // figure 3
  const auto [mc, vc] = inversions_limit_params(p.c);
  (void)vc;
  TestReport mean_rep;
  mean_rep.name = "inversions mean vs n^2(1-e^-2c)/4";
  mean_rep.statistic = std::abs(s.mean - nd * nd * mc) / s.se_mean;
  mean_rep.threshold = 4.0;
  mean_rep.pass = mean_rep.statistic < 4.0;
  detail::echo_config(mean_rep, e);
  reports.push_back(mean_rep);
  reports.push_back(
      gof_ks(standardize(e, std_.center, std_.scale), LimitLaw::normal(0.0, 1.0), 0.06));
  return reports;
}

// Mixed-regime checks: fixed points vs Poisson(1) in TV, descents and
// inversions vs the uniform-permutation normal limits after standardization.
inline std::vector<TestReport> mixed_regime_checks(Statistic statistic,
                                                   std::uint64_t seed = kFigureSeed,
                                                   int workers = 0) {
  std::vector<TestReport> reports;
  switch (statistic) {
    case Statistic::FixedPoints: {
      const std::int64_t n = 10000;
      const ExperimentSpec spec{n, mixed_shuffles(statistic, n), 2000, statistic,
                                Sampler::ShuffleEngine, seed + 10, workers};
      reports.push_back(gof_tv(run_experiment(spec), LimitLaw::poisson(1.0), 0.05));
      return reports;
    }
    case Statistic::Descents: {
      const std::int64_t n = 10000;
      const ExperimentSpec spec{n, mixed_shuffles(statistic, n), 2000, statistic,
                                Sampler::ShuffleEngine, seed + 11, workers};
      const Standardization std_ = mixed_standardization(statistic, n);
      reports.push_back(gof_ks(standardize(run_experiment(spec), std_.center, std_.scale),
                               LimitLaw::normal(0.0, 1.0), 0.04));
      return reports;
    }
    case Statistic::Inversions: {
      const std::int64_t n = 1000;
      const ExperimentSpec spec{n, mixed_shuffles(statistic, n), 1000, statistic,
                                Sampler::ShuffleEngine, seed + 12, workers};
      const Standardization std_ = mixed_standardization(statistic, n);
      reports.push_back(gof_ks(standardize(run_experiment(spec), std_.center, std_.scale),
                               LimitLaw::normal(0.0, 1.0), 0.06));
      return reports;
    }
  }
  throw std::invalid_argument("unknown statistic");
}

}  // namespace rtt
