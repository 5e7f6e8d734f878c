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

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rtt/decomposition.hpp"
#include "rtt/shuffle.hpp"
#include "rtt/stats.hpp"

namespace rtt {

// Experiment runner. Trials are embarrassingly parallel: trial t always uses
// the substream (seed, t), so results are bitwise identical for any worker
// count.

enum class Statistic { FixedPoints, Descents, Inversions };
enum class Sampler { ShuffleEngine, Resampled, FormulaDirect };

inline Statistic parse_statistic(const std::string& s) {
  if (s == "fixed-points") return Statistic::FixedPoints;
  if (s == "descents") return Statistic::Descents;
  if (s == "inversions") return Statistic::Inversions;
  throw std::invalid_argument("unknown statistic: " + s);
}

inline std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::FixedPoints: return "fixed-points";
    case Statistic::Descents: return "descents";
    case Statistic::Inversions: return "inversions";
  }
  return "?";
}

inline Sampler parse_sampler(const std::string& s) {
  if (s == "shuffle-engine") return Sampler::ShuffleEngine;
  if (s == "resampled") return Sampler::Resampled;
  if (s == "formula-direct") return Sampler::FormulaDirect;
  throw std::invalid_argument("unknown sampler: " + s);
}

inline std::string to_string(Sampler s) {
  switch (s) {
    case Sampler::ShuffleEngine: return "shuffle-engine";
    case Sampler::Resampled: return "resampled";
    case Sampler::FormulaDirect: return "formula-direct";
  }
  return "?";
}

struct ExperimentSpec {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t trials = 0;
  Statistic statistic = Statistic::FixedPoints;
  Sampler sampler = Sampler::ShuffleEngine;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = available parallelism
};

namespace detail {

inline std::int64_t eval_statistic(const Permutation& deck, Statistic statistic) {
  switch (statistic) {
    case Statistic::FixedPoints: return count_fixed_points(deck);
    case Statistic::Descents: return count_descents(deck);
    case Statistic::Inversions: return count_inversions(deck);
  }
  throw std::invalid_argument("unknown statistic");
}

inline std::int64_t run_trial(const ExperimentSpec& spec, Rng& rng) {
  switch (spec.sampler) {
    case Sampler::ShuffleEngine:
      return eval_statistic(sample_random_to_top(spec.n, spec.r, rng).deck, spec.statistic);
    case Sampler::Resampled:
      return eval_statistic(sample_resampled_deck(spec.n, spec.r, rng), spec.statistic);
    case Sampler::FormulaDirect:
      switch (spec.statistic) {
        case Statistic::FixedPoints: return sample_fixed_points_decomposed(spec.n, spec.r, rng);
        case Statistic::Descents:
          return sample_descents_decomposed(spec.n, spec.r, rng, DescentChannel::FormulaDirect)
              .statistic_value;
        case Statistic::Inversions: return sample_inversions_decomposed(spec.n, spec.r, rng);
      }
      break;
  }
  throw std::invalid_argument("unknown sampler");
}

}  // namespace detail

inline EmpiricalDistribution run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (spec.n < 1) throw std::invalid_argument("deck size must be at least 1");
  if (spec.r < 0) throw std::invalid_argument("shuffle count must be nonnegative");
  std::vector<std::int64_t> values(static_cast<std::size_t>(spec.trials));
  int workers = spec.workers > 0 ? spec.workers
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = static_cast<int>(
      std::min<std::int64_t>(workers, spec.trials));
  if (workers == 1) {
    for (std::int64_t t = 0; t < spec.trials; ++t) {
      Rng rng = Rng::substream(spec.seed, static_cast<std::uint64_t>(t));
      values[static_cast<std::size_t>(t)] = detail::run_trial(spec, rng);
    }
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        constexpr std::int64_t kChunk = 16;
        for (;;) {
          const std::int64_t begin = next.fetch_add(kChunk);
          if (begin >= spec.trials) return;
          const std::int64_t end = std::min(begin + kChunk, spec.trials);
          for (std::int64_t t = begin; t < end; ++t) {
            Rng rng = Rng::substream(spec.seed, static_cast<std::uint64_t>(t));
            values[static_cast<std::size_t>(t)] = detail::run_trial(spec, rng);
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  EmpiricalDistribution e = EmpiricalDistribution::from_values(std::move(values));
  e.n = spec.n;
  e.r = spec.r;
  e.seed = spec.seed;
  e.statistic = to_string(spec.statistic);
  e.sampler = to_string(spec.sampler);
  return e;
}

}  // namespace rtt
