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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <exception>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "racecars/engine.hpp"
#include "racecars/objectives.hpp"
#include "racecars/space.hpp"

namespace racecars {

/// Everything needed to replay a set of repetitions.
struct ExperimentSpec {
  Algorithm algorithm = Algorithm::racecars;
  std::string function = "ackley";  // synthetic objective, unless `external` is set
  std::string external;             // shell command or http:// endpoint
  std::size_t n = 50;
  double radius = 10.0;             // boundary [-radius, radius]^n
  OptimizerConfig config;           // config.seed is the base seed
  std::size_t reps = 1;
  std::size_t workers = 1;
  bool ackley_shifted_cosine = false;
  double timeout = 60.0;            // seconds per external evaluation

  /// Throws PreconditionError for unresolvable names or invalid ranges.
  void validate() const;
  Region boundary() const { return Region::cube(n, -radius, radius); }
  /// Seed of repetition `rep`: derive_seed(config.seed, rep).
  std::uint64_t run_seed(std::size_t rep) const;
  /// A fresh objective instance. Each repetition gets its own.
  std::unique_ptr<BlackBox> make_objective() const;
  std::string objective_name() const;
};

/// Runs `count` independent jobs on up to `workers` threads. Results are
/// stored by job index, so their order never depends on scheduling. The
/// first exception thrown by a job is rethrown after all threads stop.
template <class Result>
std::vector<Result> run_indexed(std::size_t count, std::size_t workers,
                                const std::function<Result(std::size_t)>& job) {
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  const std::size_t width = std::max<std::size_t>(1, std::min(workers, count));
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < width; ++w) threads.emplace_back(drain);
  drain();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// One RunRecord per repetition, in repetition order.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec);

struct Summary {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation; 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(const std::vector<double>& values);
std::vector<double> final_values(const std::vector<RunRecord>& records);

/// One-sided paired Student t test of mean(a - b) > 0.
struct PairedTest {
  double mean_difference = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
};

PairedTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

/// Shortest decimal that round-trips; inf and nan spelled "inf", "-inf", "nan".
std::string format_real(double v);

/// Columns run_id, eval_index, y, best_so_far.
void write_trajectory_csv(std::ostream& os, const std::vector<RunRecord>& records);
/// Spec fields followed by mean, std, min, max of the final best values.
void write_summary_csv(std::ostream& os, const ExperimentSpec& spec,
                       const std::vector<RunRecord>& records);

/// Parses "a,b,c", "lo:hi:step" or a mix such as "0,0.002:0.01:0.002".
/// Range endpoints are inclusive; values are lo + i * step.
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace racecars
