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

// Command-line front end: exact evaluations, simulations, verification
// suites, and figure-reproduction runs.
//
// Exit codes: 0 success, 1 statistical verification failure, 2 usage error,
// 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtt/report.hpp"
#include "rtt/rtt.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using nlohmann::json;

// Resolved experiment options. A JSON config file provides defaults; flags
// given on the command line win.
struct Options {
  std::string formula;
  std::int64_t n = 0;
  std::int64_t r = -1;
  double c = -1.0;
  std::string regime;
  std::int64_t trials = 2000;
  std::string statistic = "fixed-points";
  std::string sampler = "shuffle-engine";
  std::uint64_t seed = 1;
  std::string out;
  int workers = 0;
  std::int64_t k = -1, j = -1, m = -1, s = -1;
  std::string suite;
  int figure = 0;
  std::string panel;
  std::int64_t max_n = 5, max_r = 4;
};

void apply_config_file(const std::string& path, CLI::App& cmd, Options& opt) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read config file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config", std::string("bad config JSON: ") + e.what());
  }
  const auto load = [&](const char* key, auto& field) {
    if (cfg.contains(key) && cmd.count(std::string("--") + key) == 0)
      field = cfg.at(key).get<std::decay_t<decltype(field)>>();
  };
  load("formula", opt.formula);
  load("n", opt.n);
  load("r", opt.r);
  load("c", opt.c);
  load("regime", opt.regime);
  load("trials", opt.trials);
  load("statistic", opt.statistic);
  load("sampler", opt.sampler);
  load("seed", opt.seed);
  load("out", opt.out);
  load("workers", opt.workers);
  load("k", opt.k);
  load("j", opt.j);
  load("m", opt.m);
  load("s", opt.s);
  load("suite", opt.suite);
  load("figure", opt.figure);
  load("panel", opt.panel);
  load("max-n", opt.max_n);
  load("max-r", opt.max_r);
}

void write_file_or_die(const std::string& path, const std::string& body) {
  try {
    rtt::write_text_file(path, body);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    std::exit(kExitIo);
  }
}

// Derives the shuffle count from (r | c+regime); echoes the choice.
std::int64_t resolve_shuffles(const Options& opt, rtt::Statistic stat) {
  const bool has_r = opt.r >= 0;
  const bool has_c = opt.c >= 0.0;
  if (has_r == has_c)
    throw CLI::ValidationError("--r", "provide exactly one of --r or --c with a regime");
  if (has_r) return opt.r;
  if (opt.regime == "mixed") return rtt::mixed_shuffles(stat, opt.n);
  if (opt.regime.empty() || opt.regime == "critical" || opt.regime == "fixed-r")
    return rtt::critical_shuffles(opt.n, opt.c);
  throw CLI::ValidationError("--regime", "regime must be critical or mixed");
}

json report_to_json(const rtt::TestReport& rep) {
  json j = {
      {"name", rep.name}, {"stat", rep.statistic},   {"threshold", rep.threshold},
      {"pass", rep.pass}, {"n", rep.n},              {"r", rep.r},
      {"trials", rep.trials}, {"seed", rep.seed},
  };
  if (rep.p_value >= 0.0) j["p"] = rep.p_value;
  if (rep.df > 0) j["df"] = rep.df;
  return j;
}

int cmd_exact(const Options& opt) {
  rtt::ExactValue result;
  json cfg = {{"formula", opt.formula}, {"n", opt.n}, {"r", opt.r}};
  if (opt.formula == "efix") {
    result = {rtt::expected_fixed_points(opt.n, opt.r), rtt::ExactMethod::ClosedForm};
  } else if (opt.formula == "einv") {
    result = {rtt::expected_inversions(opt.n, opt.r), rtt::ExactMethod::ClosedForm};
  } else if (opt.formula == "ret") {
    result = {rtt::return_probability(opt.n, opt.r, opt.k), rtt::ExactMethod::Convolution};
    cfg["k"] = opt.k;
  } else if (opt.formula == "occ-mean") {
    result = {rtt::occupied_moments(opt.n, opt.r).first, rtt::ExactMethod::ClosedForm};
  } else if (opt.formula == "occ-var") {
    result = {rtt::occupied_moments(opt.n, opt.r).second, rtt::ExactMethod::ClosedForm};
  } else if (opt.formula == "qfix") {
    result = {rtt::q_fixed_points(opt.k, opt.m, opt.s), rtt::ExactMethod::AlternatingSum};
    cfg.erase("n");
    cfg.erase("r");
    cfg["k"] = opt.k;
    cfg["m"] = opt.m;
    cfg["s"] = opt.s;
  } else if (opt.formula == "pmax") {
    result = {rtt::prefix_max_pmf(opt.n, opt.j, opt.m), rtt::ExactMethod::ClosedForm};
    cfg.erase("r");
    cfg["j"] = opt.j;
    cfg["m"] = opt.m;
  } else {
    throw CLI::ValidationError("--formula",
                               "formula must be one of efix einv ret occ-mean occ-var qfix pmax");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", result.value);
  std::printf("%s\n", buf);
  if (!opt.out.empty()) {
    json j = cfg;
    j["value"] = result.value;
    j["method"] = result.method == rtt::ExactMethod::ClosedForm      ? "closed-form"
                  : result.method == rtt::ExactMethod::AlternatingSum ? "alternating-sum"
                                                                      : "convolution";
    write_file_or_die(opt.out, j.dump(2) + "\n");
  }
  return kExitPass;
}

int cmd_simulate(const Options& opt) {
  const rtt::Statistic stat = rtt::parse_statistic(opt.statistic);
  const std::int64_t r = resolve_shuffles(opt, stat);
  const rtt::ExperimentSpec spec{opt.n, r,        opt.trials, stat,
                                 rtt::parse_sampler(opt.sampler), opt.seed, opt.workers};
  const rtt::EmpiricalDistribution e = rtt::run_experiment(spec);
  json rep = rtt::report_json("simulate", e);
  if (opt.c >= 0.0) rep["c"] = opt.c;
  if (!opt.regime.empty()) rep["regime"] = opt.regime;
  if (!opt.out.empty()) {
    write_file_or_die(opt.out + ".csv", rtt::histogram_csv(e));
    // Standardized per-trial samples when the critical-regime scaling applies.
    if (opt.c > 0.0 && stat != rtt::Statistic::FixedPoints) {
      const rtt::Standardization st = rtt::critical_standardization(stat, opt.n, r, opt.c);
      rep["standardization"] = {{"center", st.center}, {"scale", st.scale},
                                {"centering", st.centering}};
      write_file_or_die(opt.out + ".samples.csv", rtt::samples_csv(e, st.center, st.scale));
    }
    write_file_or_die(opt.out + ".json", rep.dump(2) + "\n");
  }
  std::printf("%s\n", rep.dump().c_str());
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  bool all_pass = true;
  json lines = json::array();
  if (opt.suite == "brute") {
    for (const rtt::CheckResult& c : rtt::brute_force_suite(opt.max_n, opt.max_r)) {
      all_pass = all_pass && c.pass;
      const json j = {{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}};
      std::printf("%s\n", j.dump().c_str());
      lines.push_back(j);
    }
  } else if (opt.suite == "decomposition") {
    const std::int64_t n = opt.n > 0 ? opt.n : 100;
    const std::int64_t r = opt.r >= 0 ? opt.r : 150;
    const std::int64_t trials = opt.trials > 0 ? opt.trials : 30000;
    for (const rtt::TestReport& rep :
         rtt::decomposition_suite(n, r, trials, opt.seed, opt.workers)) {
      all_pass = all_pass && rep.pass;
      const json j = report_to_json(rep);
      std::printf("%s\n", j.dump().c_str());
      lines.push_back(j);
    }
  } else if (opt.suite == "limits") {
    int panel = -1;
    if (opt.panel == "top") panel = 0;
    else if (opt.panel == "middle") panel = 1;
    else if (opt.panel == "bottom") panel = 2;
    else throw CLI::ValidationError("--panel", "panel must be top, middle, or bottom");
    for (const rtt::TestReport& rep :
         rtt::figure_checks(opt.figure, panel, opt.seed, opt.workers)) {
      all_pass = all_pass && rep.pass;
      const json j = report_to_json(rep);
      std::printf("%s\n", j.dump().c_str());
      lines.push_back(j);
    }
  } else {
    throw CLI::ValidationError("--suite", "suite must be brute, decomposition, or limits");
  }
  if (!opt.out.empty()) write_file_or_die(opt.out, lines.dump(2) + "\n");
  return all_pass ? kExitPass : kExitStatFail;
}

int cmd_limitcheck(const Options& opt) {
  const rtt::Statistic stat = rtt::parse_statistic(opt.statistic);
  if (opt.regime != "critical" && opt.regime != "mixed")
    throw CLI::ValidationError("--regime", "regime must be critical or mixed");
  const bool mixed = opt.regime == "mixed";
  if (!mixed && !(opt.c > 0.0))
    throw CLI::ValidationError("--c", "critical regime requires --c > 0");
  const std::int64_t r = mixed ? rtt::mixed_shuffles(stat, opt.n)
                               : rtt::critical_shuffles(opt.n, opt.c);
  const rtt::ExperimentSpec spec{opt.n, r, opt.trials, stat, rtt::Sampler::ShuffleEngine,
                                 opt.seed, opt.workers};
  const rtt::EmpiricalDistribution e = rtt::run_experiment(spec);

  rtt::TestReport rep;
  json extra;
  if (stat == rtt::Statistic::FixedPoints) {
    const rtt::LimitLaw law =
        mixed ? rtt::LimitLaw::poisson(1.0) : rtt::LimitLaw::poisson_geometric(opt.c);
    rep = rtt::gof_tv(e, law, mixed ? 0.05 : 0.06);
  } else {
    const rtt::Standardization st = mixed
                                        ? rtt::mixed_standardization(stat, opt.n)
                                        : rtt::critical_standardization(stat, opt.n, r, opt.c);
    const double ks_max = stat == rtt::Statistic::Descents ? 0.04 : 0.06;
    rep = rtt::gof_ks(rtt::standardize(e, st.center, st.scale), rtt::LimitLaw::normal(0.0, 1.0),
                      ks_max);
    extra["standardization"] = {{"center", st.center}, {"scale", st.scale},
                                {"centering", st.centering}};
    if (!opt.out.empty())
      write_file_or_die(opt.out + ".samples.csv", rtt::samples_csv(e, st.center, st.scale));
  }
  json j = rtt::report_json("limitcheck", e, &rep);
  j["regime"] = opt.regime;
  j["chosen_r"] = r;
  if (opt.c > 0.0) j["c"] = opt.c;
  j.update(extra);
  std::printf("%s\n", j.dump().c_str());
  if (!opt.out.empty()) {
    write_file_or_die(opt.out + ".csv", rtt::histogram_csv(e));
    write_file_or_die(opt.out + ".json", j.dump(2) + "\n");
  }
  return rep.pass ? kExitPass : kExitStatFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistics of iterated random-to-top shuffles"};
  app.require_subcommand(1);
  Options opt;
  std::string config_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file; explicit flags win");
    cmd->add_option("--n", opt.n, "deck size");
    cmd->add_option("--r", opt.r, "shuffle count");
    cmd->add_option("--c", opt.c, "shuffle ratio r/n");
    cmd->add_option("--regime", opt.regime, "critical | mixed");
    cmd->add_option("--trials", opt.trials, "Monte Carlo trials");
    cmd->add_option("--statistic", opt.statistic, "fixed-points | descents | inversions");
    cmd->add_option("--sampler", opt.sampler, "shuffle-engine | resampled | formula-direct");
    cmd->add_option("--seed", opt.seed, "base seed; trial t uses substream (seed, t)");
    cmd->add_option("--out", opt.out, "output path prefix");
    cmd->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
  };

  CLI::App* exact = app.add_subcommand("exact", "evaluate a closed-form quantity");
  add_common(exact);
  exact->add_option("--formula", opt.formula, "efix | einv | ret | occ-mean | occ-var | qfix | pmax");
  exact->add_option("--k", opt.k, "card index (ret) or prefix count (qfix)");
  exact->add_option("--j", opt.j, "prefix length (pmax)");
  exact->add_option("--m", opt.m, "maximum value (qfix, pmax)");
  exact->add_option("--s", opt.s, "fixed-point count (qfix)");

  CLI::App* simulate = app.add_subcommand("simulate", "run a seeded experiment, write CSV + JSON");
  add_common(simulate);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify);
  verify->add_option("--suite", opt.suite, "brute | decomposition | limits");
  verify->add_option("--max-n", opt.max_n, "largest deck for the brute suite");
  verify->add_option("--max-r", opt.max_r, "largest shuffle count for the brute suite");
  verify->add_option("--figure", opt.figure, "figure number for the limits suite (1-3)");
  verify->add_option("--panel", opt.panel, "top | middle | bottom");

  CLI::App* limitcheck = app.add_subcommand("limitcheck", "compare a regime against its limit law");
  add_common(limitcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, *cmd, opt);
    if (cmd == exact) return cmd_exact(opt);
    if (cmd == simulate) return cmd_simulate(opt);
    if (cmd == verify) return cmd_verify(opt);
    return cmd_limitcheck(opt);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
