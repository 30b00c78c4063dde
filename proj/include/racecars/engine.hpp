// Copyright 2026 The racecars Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "racecars/classifier.hpp"
#include "racecars/objectives.hpp"
#include "racecars/sampling.hpp"
#include "racecars/space.hpp"

namespace racecars {

enum class Algorithm { batch, sracos, racecars };
enum class Replacement { worst, random_negative };

/// How exploit draws use the hypothesis.
///  anchored: copy the positive anchor and redraw a few coordinates inside
///            the active region (the SRACOS reference sampler).
///  box:      uniform over the whole active region.
enum class ExploitSampler { anchored, box };

std::optional<Algorithm> parse_algorithm(std::string_view name);
const char* to_string(Algorithm algorithm) noexcept;
std::optional<Replacement> parse_replacement(std::string_view name);
const char* to_string(Replacement replacement) noexcept;
std::optional<ExploitSampler> parse_exploit_sampler(std::string_view name);
const char* to_string(ExploitSampler sampler) noexcept;

/// Coordinates the anchored sampler redraws by default: 1 up to n = 100,
/// 2 up to n = 1000, 3 beyond.
std::size_t default_exploit_coordinates(std::size_t n) noexcept;

struct OptimizerConfig {
  std::size_t budget = 1500;       // T, total objective evaluations
  std::size_t train_size = 20;     // r, pool size
  std::size_t positive_size = 1;   // m, best samples labelled positive
  double lambda = 0.9;             // exploitation rate
  double gamma = 0.95;             // region shrinking rate (racecars)
  double rho = 0.01;               // region shrinking frequency (racecars)
  Replacement replacement = Replacement::worst;
  std::uint64_t seed = 0;
  ExploitSampler exploit = ExploitSampler::anchored;
  /// Coordinates redrawn by the anchored sampler; 0 picks
  /// default_exploit_coordinates(n).
  std::size_t exploit_coordinates = 0;

  /// Throws PreconditionError unless T > r > m >= 1, lambda in [0,1] and,
  /// for racecars, gamma and rho in (0,1).
  void validate(Algorithm algorithm) const;
};

struct TrajectoryPoint {
  std::size_t eval_index;  // 1-based
  double y;
  double best_so_far;
};

struct RunCounters {
  std::size_t shrink_events = 0;
  std::size_t empty_projections = 0;
  std::size_t dropped_negatives = 0;
  std::size_t nan_values = 0;
  std::size_t evaluation_errors = 0;
};

struct RunRecord {
  std::vector<TrajectoryPoint> trajectory;  // one entry per evaluation
  Sample best;
  RunCounters counters;
  /// Set when the objective failed and the run stopped early; the
  /// trajectory then holds only the completed evaluations.
  std::optional<std::string> failure;

  /// NaN when no evaluation completed.
  double final_best() const {
    return trajectory.empty() ? std::numeric_limits<double>::quiet_NaN()
                              : trajectory.back().best_so_far;
  }
};

/// What the engine did at one guided step, for tests and diagnostics.
struct StepTrace {
  std::size_t eval_index;
  const Hypothesis& hypothesis;
  const Region& shrunk;             // current sampling region; the boundary for sracos/batch
  const MaybeRegion& exploit_region;
  const MixtureDraw& draw;
};

using StepObserver = std::function<void(const StepTrace&)>;

/// Batch mode: r uniform draws, then rounds of r draws from the mixture,
/// keeping the best r of the old pool and the new round. The last round is
/// truncated to the remaining budget.
RunRecord optimize_batch(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                         const StepObserver& observer = {});

/// Sequential mode: one draw per step, pool maintained by `replace`.
RunRecord optimize_sracos(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                          const StepObserver& observer = {});

/// Sequential mode with stochastic region shrinking.
///
/// Each step, with probability rho, the sampling region becomes
/// shrink_around(best, boundary, gamma, k) and k increments (k starts at 1).
/// The hypothesis is projected into that region; the explore branch still
/// draws from the whole boundary. The shrink coin comes from its own stream,
/// so a run without shrink events reproduces optimize_sracos exactly.
RunRecord optimize_racecars(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                            const StepObserver& observer = {});

RunRecord optimize(Algorithm algorithm, BlackBox& f, const Region& boundary,
                   const OptimizerConfig& config, const StepObserver& observer = {});

/// In-place replacement on a pool of fixed size.
///
/// worst: `incoming` replaces the worst sample if strictly better, otherwise
/// the pool is unchanged. random_negative: `incoming` always enters and a
/// uniformly chosen sample among the worst (size - positive_size) leaves.
/// The incoming sample is appended, so pool order stays insertion order.
void replace_into(std::vector<Sample>& pool, Sample incoming, std::size_t positive_size,
                  Replacement strategy, RandomSource& rng);

std::vector<Sample> replace(Sample incoming, std::vector<Sample> pool, std::size_t positive_size,
                            Replacement strategy, RandomSource& rng);

}  // namespace racecars
