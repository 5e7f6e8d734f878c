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

#include <sys/wait.h>

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(RTT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) result.stdout_text.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fs::path test_dir() {
  const fs::path dir = fs::temp_directory_path() / "rtt_cli_test";
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("exact subcommand prints closed forms", "[cli]") {
  const RunResult efix = run_cli("exact --formula efix --n 3 --r 2");
  REQUIRE(efix.exit_code == 0);
  CHECK(std::abs(std::stod(efix.stdout_text) - 10.0 / 9.0) < 1e-11);

  const RunResult einv = run_cli("exact --formula einv --n 3 --r 0");
  REQUIRE(einv.exit_code == 0);
  CHECK(std::stod(einv.stdout_text) == 0.0);

  const RunResult ret = run_cli("exact --formula ret --n 2 --r 1 --k 2");
  REQUIRE(ret.exit_code == 0);
  CHECK(std::abs(std::stod(ret.stdout_text) - 0.5) < 1e-12);

  CHECK(run_cli("exact --formula efix --n 3 --r -1").exit_code == 2);
  CHECK(run_cli("exact --formula nope --n 3 --r 1").exit_code == 2);
  CHECK(run_cli("exact --formula efix --n 3 --r 2 --bogus-flag 1").exit_code == 2);
}

TEST_CASE("exact subcommand writes a json result", "[cli]") {
  const fs::path out = test_dir() / "efix.json";
  fs::remove(out);
  REQUIRE(run_cli("exact --formula efix --n 3 --r 2 --out " + out.string()).exit_code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("formula") == "efix");
  CHECK(j.at("n") == 3);
  CHECK(j.at("r") == 2);
  CHECK(std::abs(j.at("value").get<double>() - 10.0 / 9.0) < 1e-12);
}

TEST_CASE("simulate writes reproducible artifacts", "[cli]") {
  const fs::path dir = test_dir();
  const std::string base = "simulate --n 50 --r 50 --trials 200 --seed 9 "
                           "--statistic fixed-points --sampler shuffle-engine --workers 2 --out ";
  REQUIRE(run_cli(base + (dir / "a").string()).exit_code == 0);
  REQUIRE(run_cli(base + (dir / "b").string()).exit_code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  const json rep = json::parse(slurp(dir / "a.json"));
  CHECK(rep.at("experiment") == "simulate");
  CHECK(rep.at("n") == 50);
  CHECK(rep.at("r") == 50);
  CHECK(rep.at("trials") == 200);
  CHECK(rep.at("seed") == 9);
}

TEST_CASE("simulate single trial with zero shuffles", "[cli]") {
  const fs::path dir = test_dir();
  REQUIRE(run_cli("simulate --n 17 --r 0 --trials 1 --seed 1 --statistic fixed-points --out " +
                  (dir / "point").string())
              .exit_code == 0);
  const std::string csv = slurp(dir / "point.csv");
  CHECK(csv.find("value,count,density\n17,1,1\n") != std::string::npos);
}

TEST_CASE("simulate standardized samples in the critical regime", "[cli]") {
  const fs::path dir = test_dir();
  REQUIRE(run_cli("simulate --n 200 --c 1 --trials 50 --seed 3 --statistic descents --out " +
                  (dir / "crit").string())
              .exit_code == 0);
  CHECK(fs::exists(dir / "crit.samples.csv"));
  const json rep = json::parse(slurp(dir / "crit.json"));
  CHECK(rep.at("r") == 200);
  CHECK(rep.at("standardization").at("centering") == "asymptotic");
}

TEST_CASE("verify brute suite", "[cli]") {
  const RunResult res = run_cli("verify --suite brute --max-n 4 --max-r 3");
  REQUIRE(res.exit_code == 0);
  // One JSON line per check.
  std::int64_t lines = 0;
  for (char ch : res.stdout_text)
    if (ch == '\n') ++lines;
  CHECK(lines == 4 * 4 * 4);
  CHECK(res.stdout_text.find("\"pass\":true") != std::string::npos);
  CHECK(res.stdout_text.find("\"pass\":false") == std::string::npos);
}

TEST_CASE("verify usage errors", "[cli]") {
  CHECK(run_cli("verify --suite nonsense").exit_code == 2);
  CHECK(run_cli("verify --suite limits --figure 9 --panel top").exit_code == 2);
  CHECK(run_cli("verify --suite limits --figure 1 --panel sideways").exit_code == 2);
  CHECK(run_cli("limitcheck --statistic descents --n 100 --regime sometimes").exit_code == 2);
  CHECK(run_cli("limitcheck --statistic descents --n 100 --regime critical").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("config file provides defaults and flags win", "[cli]") {
  const fs::path dir = test_dir();
  const fs::path cfg = dir / "config.json";
  {
    std::ofstream out(cfg);
    out << R"({"n": 10, "r": 5, "trials": 30, "seed": 4, "statistic": "inversions"})";
  }
  const RunResult res =
      run_cli("simulate --config " + cfg.string() + " --n 20 --out " + (dir / "cfg").string());
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(slurp(dir / "cfg.json"));
  CHECK(rep.at("n") == 20);  // flag overrides config
  CHECK(rep.at("r") == 5);
  CHECK(rep.at("trials") == 30);
  CHECK(rep.at("seed") == 4);
  CHECK(rep.at("statistic") == "inversions");
  CHECK(run_cli("simulate --config " + (dir / "missing.json").string()).exit_code == 2);
}

TEST_CASE("unwritable output exits with the io code", "[cli]") {
  CHECK(run_cli("simulate --n 10 --r 5 --trials 5 --out /nonexistent-dir/run").exit_code == 3);
}

TEST_CASE("limitcheck produces a regime report", "[cli]") {
  const fs::path dir = test_dir();
  const RunResult res =
      run_cli("limitcheck --statistic inversions --n 120 --regime critical --c 1 --trials 2000 "
              "--seed 6 --out " +
              (dir / "lim").string());
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(slurp(dir / "lim.json"));
  CHECK(rep.at("regime") == "critical");
  CHECK(rep.at("chosen_r") == 120);
  CHECK(rep.at("test").at("pass") == true);
  CHECK(fs::exists(dir / "lim.samples.csv"));
  CHECK(fs::exists(dir / "lim.csv"));
}

}  // namespace
