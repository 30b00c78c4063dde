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


// Acceptance run: one PASS or FAIL line per criterion. Exit status is 1 if
// any criterion fails, unless --report is given. Seeds are fixed, so the
// output is reproducible.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

#include "racecars/classifier.hpp"
#include "racecars/diagnostics.hpp"
#include "racecars/engine.hpp"
#include "racecars/errors.hpp"
#include "racecars/experiment.hpp"
#include "racecars/objectives.hpp"
#include "racecars/sampling.hpp"
#include "racecars/space.hpp"

using namespace racecars;

namespace {

constexpr std::uint64_t kSeed = 20261014;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, fmt::format("threw: {}", e.what())};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) ++failures;
  std::printf("%s %s: %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::size_t between(RandomSource& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.index(hi - lo + 1);
}

ExperimentSpec ackley_spec(Algorithm alg, std::size_t n, double rho, std::size_t reps) {
  ExperimentSpec s;
  s.algorithm = alg;
  s.function = "ackley";
  s.n = n;
  s.radius = 10.0;
  s.reps = reps;
  s.config.budget = 30 * n;
  s.config.gamma = 0.95;
  s.config.rho = rho;
  s.config.seed = kSeed;
  return s;
}

Outcome mean_in(const ExperimentSpec& spec, double centre, double tol) {
  const Summary s = summarize(final_values(run_experiment(spec)));
  const bool ok = std::abs(s.mean - centre) <= tol;
  return {ok, fmt::format("mean {:.3f} std {:.3f} over {} reps, want [{:.1f}, {:.1f}]", s.mean,
                          s.stdev, spec.reps, centre - tol, centre + tol)};
}

Outcome acceleration(const std::string& fn) {
  ExperimentSpec base;
  base.function = fn;
  base.n = 50;
  base.reps = 10;
  base.config.budget = 1500;
  base.config.gamma = 0.95;
  base.config.rho = 0.01;
  base.config.seed = kSeed;
  ExperimentSpec sr = base, rc = base;
  sr.algorithm = Algorithm::sracos;
  rc.algorithm = Algorithm::racecars;
  const auto a = final_values(run_experiment(sr));
  const auto b = final_values(run_experiment(rc));
  const PairedTest t = paired_t_test(a, b);
  const double ma = summarize(a).mean, mb = summarize(b).mean;
  return {mb < ma && t.p_value < 0.01,
          fmt::format("sracos {:.3f}, racecars {:.3f}, paired t {:.2f}, p {:.2e}", ma, mb, t.t,
                      t.p_value)};
}

Outcome harness() {
  struct Case {
    Region target;
    double lambda;
    std::size_t r, T;
  };
  const Region unit = Region::cube(2, 0.0, 1.0);
  const std::vector<Case> cases = {
      {Region::cube(2, 0.0, 0.1), 0.5, 2, 10},
      {Region({0.3, 0.1}, {0.5, 0.6}), 0.3, 3, 12},
      {Region::cube(2, 0.2, 0.25), 0.001, 10, 400},
  };
  RandomSource rng(kSeed);
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const HarnessResult h = run_counterexample_harness(c.target, unit, c.lambda, c.r, c.T, 100000,
                                                       rng);
    ok = ok && h.agrees(4.0);
    detail += fmt::format("{}{:.4e} vs {:.4e} ({:+.1f} sigma)", detail.empty() ? "" : "; ",
                          h.rate, h.expected, (h.rate - h.expected) / h.sigma);
  }
  const double example = counterexample_failure_probability(0.01, 0.5, 2, 10);
  ok = ok && std::abs(example - 3.533e-3) <= 5e-7;
  return {ok, detail};
}

Outcome bound_ordering() {
  RandomSource rng(kSeed);
  std::size_t violations = 0, tuples = 10000;
  for (std::size_t i = 0; i < tuples; ++i) {
    BoundInputs in;
    in.lambda = 1.0 - rng.uniform01();
    in.eta = 1.0 - rng.uniform01();
    in.p = 1.0;
    in.target_measure = std::pow(10.0, -6.0 * rng.uniform01());
    in.delta = std::clamp(rng.uniform01(), 1e-9, 1.0 - 1e-9);
    in.r = static_cast<double>(between(rng, 1, 1000));
    in.T = in.r + static_cast<double>(between(rng, 0, 100000));
    in.gamma = std::clamp(rng.uniform01(), 1e-6, 1.0 - 1e-12);
    in.rho = std::clamp(rng.uniform01(), 1e-6, 1.0 - 1e-6);
    if (!(bound_racecars(in) <= bound_sracos(in))) ++violations;
  }
  return {violations == 0, fmt::format("{} violations in {} tuples", violations, tuples)};
}

Outcome classifier() {
  RandomSource rng(kSeed);
  std::size_t leaks = 0, anchor_misses = 0, unseparable = 0, splits = 10000;
  for (std::size_t trial = 0; trial < splits; ++trial) {
    const std::size_t n = between(rng, 1, 100);
    const std::size_t r = between(rng, 2, 200);
    const std::size_t m = between(rng, 1, r - 1);
    const Region boundary = Region::cube(n, -10.0, 10.0);
    std::vector<Sample> pool(r);
    for (auto& s : pool) {
      s.x = uniform_in(boundary, rng);
      s.y = rng.uniform01();
    }
    const TrainingSplit split = classify_split(pool, m);
    try {
      const Hypothesis h = train_racos(split, boundary, rng);
      if (!h(h.anchor)) ++anchor_misses;
      for (const Sample* neg : split.negatives) leaks += h(neg->x) ? 1 : 0;
    } catch (const UnseparableError&) {
      ++unseparable;
    }
  }
  return {leaks + anchor_misses + unseparable == 0,
          fmt::format("{} splits: {} negatives inside, {} anchors outside, {} unseparable", splits,
                      leaks, anchor_misses, unseparable)};
}

std::string csv_bytes(const ExperimentSpec& spec) {
  const auto records = run_experiment(spec);
  std::ostringstream os;
  write_trajectory_csv(os, records);
  write_summary_csv(os, spec, records);
  return os.str();
}

Outcome budget_and_determinism() {
  RandomSource rng(kSeed);
  const char* functions[] = {"ackley", "levy", "rastrigin", "sphere"};
  const Algorithm algorithms[] = {Algorithm::batch, Algorithm::sracos, Algorithm::racecars};
  std::size_t miscounts = 0, mismatches = 0, specs = 100;
  for (std::size_t i = 0; i < specs; ++i) {
    ExperimentSpec s;
    s.algorithm = algorithms[rng.index(3)];
    s.function = functions[rng.index(4)];
    s.n = between(rng, 2, 30);
    s.radius = 1.0 + 19.0 * rng.uniform01();
    s.reps = between(rng, 1, 3);
    s.config.train_size = between(rng, 2, 30);
    s.config.positive_size = between(rng, 1, s.config.train_size - 1);
    s.config.budget = s.config.train_size + between(rng, 1, 600);
    s.config.lambda = rng.uniform01();
    s.config.gamma = 0.5 + 0.49 * rng.uniform01();
    s.config.rho = 0.001 + 0.3 * rng.uniform01();
    s.config.replacement = rng.index(2) == 0 ? Replacement::worst : Replacement::random_negative;
    s.config.exploit = rng.index(2) == 0 ? ExploitSampler::anchored : ExploitSampler::box;
    s.config.seed = rng.next();
    s.validate();

    auto f = s.make_objective();
    CountingObjective counted(*f);
    const RunRecord rec = optimize(s.algorithm, counted, s.boundary(), [&] {
      OptimizerConfig c = s.config;
      c.seed = s.run_seed(0);
      return c;
    }());
    if (counted.calls() != s.config.budget || rec.trajectory.size() != s.config.budget) {
      ++miscounts;
    }
    if (csv_bytes(s) != csv_bytes(s)) ++mismatches;
  }
  return {miscounts + mismatches == 0,
          fmt::format("{} specs: {} call counts other than T, {} CSV mismatches", specs, miscounts,
                      mismatches)};
}

Outcome point_checks() {
  const std::size_t n = 9;
  Point e1(n, 0.0);
  e1[0] = 1.0;
  const double ackley_expected = std::numbers::e - std::exp(std::cos(0.4 * std::numbers::pi));
  const double a = ackley(Point(n, 0.2));
  const bool ok = levy(Point(n, 1.0)) == 0.0 && rastrigin(Point(n, 0.0)) == 0.0 &&
                  sphere(Point(n, 0.2)) == 0.0 && std::abs(a - ackley_expected) <= 1e-12 &&
                  std::abs(rastrigin(e1) - 1.0) <= 1e-12;
  return {ok, fmt::format("levy(1)={:.3g} rastrigin(0)={:.3g} sphere(0.2)={:.3g} "
                          "ackley(0.2)-expected={:.3g} rastrigin(e1)-1={:.3g}",
                          levy(Point(n, 1.0)), rastrigin(Point(n, 0.0)), sphere(Point(n, 0.2)),
                          a - ackley_expected, rastrigin(e1) - 1.0)};
}

Outcome echo_oracle() {
  RandomSource rng(kSeed);
  const std::size_t n = 7;
  SubprocessObjective f(ECHO_ADAPTER_PATH, n, 10.0);
  const Region box = Region::cube(n, -1e3, 1e3);
  std::size_t mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const Point x = uniform_in(box, rng);
    double sum = 0.0;
    for (double v : x) sum += v;
    if (f.evaluate(x) != sum) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} of 100 replies differ from the in-process sum",
                                       mismatches)};
}

}  // namespace

int main(int argc, char** argv) {
  const bool report_only = argc > 1 && std::string_view(argv[1]) == "--report";
  report("1a sracos ackley n=50", [] {
    return mean_in(ackley_spec(Algorithm::sracos, 50, 0.01, 20), 3.8, 0.6);
  });
  report("1b racecars ackley n=50 rho=0.028", [] {
    return mean_in(ackley_spec(Algorithm::racecars, 50, 0.028, 20), 1.3, 0.6);
  });
  report("1c racecars ackley n=500 rho=0.004", [] {
    return mean_in(ackley_spec(Algorithm::racecars, 500, 0.004, 5), 1.7, 1.2);
  });
  for (const char* fn : {"ackley", "levy", "rastrigin"}) {
    report(fmt::format("2 acceleration {}", fn), [fn] { return acceleration(fn); });
  }
  report("3 counterexample closed form", harness);
  report("4 bound ordering", bound_ordering);
  report("5 classifier invariants", classifier);
  report("6 budget exactness and determinism", budget_and_determinism);
  report("7 synthetic point checks", point_checks);
  report("external echo oracle", echo_oracle);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 || report_only ? 0 : 1;
}
