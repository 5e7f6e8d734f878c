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

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rtt/stats.hpp"

namespace rtt {

// File outputs: histogram CSV (`value,count,density`), standardized-sample
// CSV (`trial,value`), and the report JSON. Every file embeds the resolved
// configuration, so a run can be reproduced byte for byte from the file
// alone. Doubles are written with shortest-round-trip formatting.

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

}  // namespace detail

inline nlohmann::json config_json(const EmpiricalDistribution& e) {
  return {
      {"n", e.n},         {"r", e.r},
      {"trials", e.sample_count()},
      {"seed", e.seed},   {"statistic", e.statistic},
      {"sampler", e.sampler},
  };
}

inline nlohmann::json report_json(const std::string& experiment,
                                  const EmpiricalDistribution& e,
                                  const TestReport* test = nullptr) {
  nlohmann::json j = config_json(e);
  j["experiment"] = experiment;
  j["mean"] = e.mean;
  j["variance"] = e.variance;
  if (test != nullptr) {
    j["test"] = {
        {"name", test->name},       {"stat", test->statistic},
        {"threshold", test->threshold}, {"pass", test->pass},
    };
    if (test->p_value >= 0.0) j["test"]["p"] = test->p_value;
    if (test->df > 0) j["test"]["df"] = test->df;
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Histogram over the integer payload, one row per observed value ascending.
inline std::string histogram_csv(const EmpiricalDistribution& e) {
  if (!e.integer_valued()) throw std::invalid_argument("histogram requires integer samples");
  std::string body = "# " + config_json(e).dump() + "\n";
  body += "value,count,density\n";
  const double total = static_cast<double>(e.sample_count());
  for (const auto& [value, count] : e.counts) {
    body += std::to_string(value);
    body += ',';
    body += std::to_string(count);
    body += ',';
    body += detail::format_double(static_cast<double>(count) / total);
    body += '\n';
  }
  return body;
}

// Per-trial standardized values, in trial order.
inline std::string samples_csv(const EmpiricalDistribution& e, double center, double scale) {
  if (!e.integer_valued()) throw std::invalid_argument("samples csv reads the per-trial payload");
  nlohmann::json cfg = config_json(e);
  cfg["center"] = center;
  cfg["scale"] = scale;
  std::string body = "# " + cfg.dump() + "\n";
  body += "trial,value\n";
  for (std::size_t t = 0; t < e.values.size(); ++t) {
    body += std::to_string(t);
    body += ',';
    body += detail::format_double((static_cast<double>(e.values[t]) - center) / scale);
    body += '\n';
  }
  return body;
}

}  // namespace rtt
