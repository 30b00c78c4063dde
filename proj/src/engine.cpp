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


#include "racecars/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "batch") return Algorithm::batch;
  if (name == "sracos") return Algorithm::sracos;
  if (name == "racecars") return Algorithm::racecars;
  return std::nullopt;
}

const char* to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::batch:
      return "batch";
    case Algorithm::sracos:
      return "sracos";
    case Algorithm::racecars:
      return "racecars";
  }
  return "unknown";
}

std::optional<Replacement> parse_replacement(std::string_view name) {
  if (name == "worst" || name == "worst-replace") return Replacement::worst;
  if (name == "random-negative" || name == "random-negative-replace") {
    return Replacement::random_negative;
  }
  return std::nullopt;
}

const char* to_string(Replacement replacement) noexcept {
  switch (replacement) {
    case Replacement::worst:
      return "worst";
    case Replacement::random_negative:
      return "random-negative";
  }
  return "unknown";
}

std::optional<ExploitSampler> parse_exploit_sampler(std::string_view name) {
  if (name == "anchored") return ExploitSampler::anchored;
  if (name == "box") return ExploitSampler::box;
  return std::nullopt;
}

const char* to_string(ExploitSampler sampler) noexcept {
  switch (sampler) {
    case ExploitSampler::anchored:
      return "anchored";
    case ExploitSampler::box:
      return "box";
  }
  return "unknown";
}

std::size_t default_exploit_coordinates(std::size_t n) noexcept {
  if (n <= 100) return 1;
  if (n <= 1000) return 2;
  return 3;
}

void OptimizerConfig::validate(Algorithm algorithm) const {
  if (positive_size < 1) throw PreconditionError("positive size must be >= 1");
  if (train_size <= positive_size) {
    throw PreconditionError(fmt::format("training size ({}) must exceed positive size ({})",
                                        train_size, positive_size));
  }
  if (budget <= train_size && !(algorithm == Algorithm::batch && budget == train_size)) {
    throw PreconditionError(
        fmt::format("budget ({}) must exceed training size ({})", budget, train_size));
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw PreconditionError(fmt::format("exploitation rate must lie in [0,1], got {}", lambda));
  }
  if (algorithm == Algorithm::racecars) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw PreconditionError(fmt::format("shrinking rate must lie in (0,1), got {}", gamma));
    }
    if (!(rho > 0.0 && rho < 1.0)) {
      throw PreconditionError(fmt::format("shrinking frequency must lie in (0,1), got {}", rho));
    }
  }
}

void replace_into(std::vector<Sample>& pool, Sample incoming, std::size_t positive_size,
                  Replacement strategy, RandomSource& rng) {
  if (pool.empty()) throw PreconditionError("cannot replace into an empty pool");
  switch (strategy) {
    case Replacement::worst: {
      auto worst = std::max_element(pool.begin(), pool.end(),
                                    [](const Sample& a, const Sample& b) { return a.y < b.y; });
      if (!(incoming.y < worst->y)) return;
      pool.erase(worst);
      break;
    }
    case Replacement::random_negative: {
      if (pool.size() <= positive_size) {
        throw PreconditionError("random-negative replacement needs pool size > positive size");
      }
      std::vector<std::size_t> order(pool.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return pool[a].y < pool[b].y; });
      const std::size_t victim = order[positive_size + rng.index(pool.size() - positive_size)];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(victim));
      break;
    }
  }
  pool.push_back(std::move(incoming));
}

std::vector<Sample> replace(Sample incoming, std::vector<Sample> pool, std::size_t positive_size,
                            Replacement strategy, RandomSource& rng) {
  replace_into(pool, std::move(incoming), positive_size, strategy, rng);
  return pool;
}

namespace {

// Shared bookkeeping for one optimization run.
class RunState {
 public:
  RunState(BlackBox& f, std::size_t budget) : f_(f) { record_.trajectory.reserve(budget); }

  std::size_t evaluations() const { return record_.trajectory.size(); }
  const Sample& best() const { return record_.best; }
  RunCounters& counters() { return record_.counters; }

  // NaN and recoverable evaluation errors count as +inf. ObjectiveFailure
  // propagates to the caller.
  Sample evaluate(Point x) {
    double y;
    try {
      y = f_.evaluate(x);
      if (std::isnan(y)) {
        ++record_.counters.nan_values;
        y = std::numeric_limits<double>::infinity();
      }
    } catch (const EvaluationError&) {
      ++record_.counters.evaluation_errors;
      y = std::numeric_limits<double>::infinity();
    }
    Sample s{std::move(x), y};
    if (record_.trajectory.empty() || s.y < record_.best.y) record_.best = s;
    record_.trajectory.push_back({record_.trajectory.size() + 1, s.y, record_.best.y});
    return s;
  }

  RunRecord finish() && { return std::move(record_); }
  RunRecord fail(const std::string& why) && {
    record_.failure = why;
    return std::move(record_);
  }

 private:
  BlackBox& f_;
  RunRecord record_;
};

Hypothesis train_dropping_unseparable(TrainingSplit split, const Region& boundary,
                                      RandomSource& rng, RunCounters& counters) {
  for (;;) {
    try {
      return train_racos(split, boundary, rng);
    } catch (const UnseparableError& e) {
      split.negatives.erase(split.negatives.begin() +
                            static_cast<std::ptrdiff_t>(e.negative_index()));
      ++counters.dropped_negatives;
    }
  }
}

ExploitRule exploit_rule(const Hypothesis& h, const OptimizerConfig& config) {
  if (config.exploit == ExploitSampler::box) return {};
  const std::size_t coords = config.exploit_coordinates == 0
                                 ? default_exploit_coordinates(h.anchor.size())
                                 : config.exploit_coordinates;
  return {h.anchor, coords};
}

void check_point(BlackBox& f, const Region& boundary) {
  if (f.dimension() != boundary.dimension()) {
    throw PreconditionError(fmt::format("objective dimension {} does not match boundary dimension {}",
                                        f.dimension(), boundary.dimension()));
  }
}

std::vector<Sample> initial_pool(RunState& state, const Region& boundary, std::size_t r,
                                 RandomSource& rng) {
  std::vector<Sample> pool;
  pool.reserve(r + 1);
  for (std::size_t i = 0; i < r; ++i) pool.push_back(state.evaluate(uniform_in(boundary, rng)));
  return pool;
}

RunRecord run_sequential(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                         bool shrinking, const StepObserver& observer) {
  check_point(f, boundary);
  config.validate(shrinking ? Algorithm::racecars : Algorithm::sracos);
  RandomSource rng(config.seed);
  RandomSource shrink_coin = rng.fork(0x5348524b);
  RunState state(f, config.budget);
  try {
    std::vector<Sample> pool = initial_pool(state, boundary, config.train_size, rng);
    Region shrunk = boundary;
    int k = 1;
    while (state.evaluations() < config.budget) {
      const Hypothesis h = train_dropping_unseparable(classify_split(pool, config.positive_size),
                                                      boundary, rng, state.counters());
      MaybeRegion exploit;
      MixtureDraw draw;
      const ExploitRule rule = exploit_rule(h, config);
      if (shrinking) {
        if (shrink_coin.uniform01() <= config.rho) {
          shrunk = shrink_around(state.best().x, boundary, config.gamma, k);
          ++k;
          ++state.counters().shrink_events;
        }
        exploit = project(h, shrunk);
        if (!exploit) ++state.counters().empty_projections;
        draw = sample_mixture(exploit, boundary, shrunk, config.lambda, rng, rule);
      } else {
        exploit = h.active;
        draw = sample_mixture(exploit, boundary, boundary, config.lambda, rng, rule);
      }
      assert(draw.branch != Branch::exploit || exploit->contains(draw.x));
      if (observer) observer(StepTrace{state.evaluations() + 1, h, shrunk, exploit, draw});
      replace_into(pool, state.evaluate(std::move(draw.x)), config.positive_size,
                   config.replacement, rng);
    }
  } catch (const ObjectiveFailure& e) {
    return std::move(state).fail(e.what());
  }
  return std::move(state).finish();
}

}  // namespace

RunRecord optimize_batch(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                         const StepObserver& observer) {
  check_point(f, boundary);
  config.validate(Algorithm::batch);
  RandomSource rng(config.seed);
  RunState state(f, config.budget);
  const std::size_t r = config.train_size;
  try {
    std::vector<Sample> pool = initial_pool(state, boundary, r, rng);
    while (state.evaluations() < config.budget) {
      const Hypothesis h = train_dropping_unseparable(classify_split(pool, config.positive_size),
                                                      boundary, rng, state.counters());
      const MaybeRegion exploit = h.active;
      const std::size_t round = std::min(r, config.budget - state.evaluations());
      for (std::size_t i = 0; i < round; ++i) {
        MixtureDraw draw =
            sample_mixture(exploit, boundary, boundary, config.lambda, rng, exploit_rule(h, config));
        if (observer) observer(StepTrace{state.evaluations() + 1, h, boundary, exploit, draw});
        pool.push_back(state.evaluate(std::move(draw.x)));
      }
      // Best r of old pool and new round; ties keep the older sample.
      std::stable_sort(pool.begin(), pool.end(),
                       [](const Sample& a, const Sample& b) { return a.y < b.y; });
      pool.resize(r);
    }
  } catch (const ObjectiveFailure& e) {
    return std::move(state).fail(e.what());
  }
  return std::move(state).finish();
}

RunRecord optimize_sracos(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                          const StepObserver& observer) {
  return run_sequential(f, boundary, config, false, observer);
}

RunRecord optimize_racecars(BlackBox& f, const Region& boundary, const OptimizerConfig& config,
                            const StepObserver& observer) {
  return run_sequential(f, boundary, config, true, observer);
}

RunRecord optimize(Algorithm algorithm, BlackBox& f, const Region& boundary,
                   const OptimizerConfig& config, const StepObserver& observer) {
  switch (algorithm) {
    case Algorithm::batch:
      return optimize_batch(f, boundary, config, observer);
    case Algorithm::sracos:
      return optimize_sracos(f, boundary, config, observer);
    case Algorithm::racecars:
      return optimize_racecars(f, boundary, config, observer);
  }
  throw PreconditionError("unknown algorithm");
}

}  // namespace racecars
