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


#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "racecars/engine.hpp"
#include "racecars/errors.hpp"
#include "racecars/objectives.hpp"

using namespace racecars;

namespace {

std::vector<double> ys(const std::vector<Sample>& pool) {
  std::vector<double> out;
  for (const auto& s : pool) out.push_back(s.y);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Sample> pool_123() { return {{Point{0.0}, 1.0}, {Point{1.0}, 2.0}, {Point{2.0}, 3.0}}; }

void check_trajectory(const RunRecord& rec, std::size_t budget) {
  REQUIRE(rec.trajectory.size() == budget);
  double lowest = INFINITY;
  for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
    const auto& p = rec.trajectory[i];
    CHECK(p.eval_index == i + 1);
    lowest = std::min(lowest, p.y);
    CHECK(p.best_so_far == lowest);
  }
  CHECK(rec.final_best() == lowest);
  CHECK(rec.best.y == lowest);
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("config validation") {
  OptimizerConfig c;
  CHECK_NOTHROW(c.validate(Algorithm::racecars));
  c.train_size = c.budget;
  CHECK_THROWS_AS(c.validate(Algorithm::sracos), PreconditionError);
  CHECK_NOTHROW(c.validate(Algorithm::batch));
  c = {};
  c.positive_size = c.train_size;
  CHECK_THROWS_AS(c.validate(Algorithm::sracos), PreconditionError);
  c = {};
  c.positive_size = 0;
  CHECK_THROWS_AS(c.validate(Algorithm::sracos), PreconditionError);
  c = {};
  c.lambda = 1.1;
  CHECK_THROWS_AS(c.validate(Algorithm::sracos), PreconditionError);
  c = {};
  c.rho = 0.0;
  CHECK_NOTHROW(c.validate(Algorithm::sracos));
  CHECK_THROWS_AS(c.validate(Algorithm::racecars), PreconditionError);
  c = {};
  c.gamma = 1.0;
  CHECK_THROWS_AS(c.validate(Algorithm::racecars), PreconditionError);
}

TEST_CASE("enum names round-trip") {
  for (auto a : {Algorithm::batch, Algorithm::sracos, Algorithm::racecars}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK(parse_replacement("worst-replace") == Replacement::worst);
  CHECK(parse_replacement("random-negative-replace") == Replacement::random_negative);
  CHECK(parse_replacement(to_string(Replacement::random_negative)) == Replacement::random_negative);
  CHECK(parse_exploit_sampler("box") == ExploitSampler::box);
  CHECK_FALSE(parse_algorithm("cmaes"));
  CHECK(default_exploit_coordinates(50) == 1);
  CHECK(default_exploit_coordinates(500) == 2);
  CHECK(default_exploit_coordinates(5000) == 3);
}

TEST_CASE("replacement examples") {
  RandomSource rng(1);
  CHECK(ys(replace({Point{9.0}, 2.5}, pool_123(), 1, Replacement::worst, rng)) ==
        std::vector{1.0, 2.0, 2.5});
  const auto unchanged = replace({Point{9.0}, 9.0}, pool_123(), 1, Replacement::worst, rng);
  CHECK(ys(unchanged) == std::vector{1.0, 2.0, 3.0});
  CHECK(unchanged[0].x == Point{0.0});
  // Equal to the worst is not strictly better.
  CHECK(ys(replace({Point{9.0}, 3.0}, pool_123(), 1, Replacement::worst, rng)) ==
        std::vector{1.0, 2.0, 3.0});

  bool dropped2 = false, dropped3 = false;
  for (int i = 0; i < 200; ++i) {
    const auto out = ys(replace({Point{9.0}, 9.0}, pool_123(), 1, Replacement::random_negative, rng));
    REQUIRE(out.size() == 3);
    CHECK(out.front() == 1.0);
    CHECK(out.back() == 9.0);
    dropped2 = dropped2 || out[1] == 3.0;
    dropped3 = dropped3 || out[1] == 2.0;
  }
  CHECK(dropped2);
  CHECK(dropped3);
  std::vector<Sample> empty;
  CHECK_THROWS_AS(replace_into(empty, {Point{0.0}, 0.0}, 1, Replacement::worst, rng),
                  PreconditionError);
}

TEST_CASE("worst replacement never worsens the sorted pool") {
  RandomSource rng(3);
  std::vector<Sample> pool;
  for (int i = 0; i < 10; ++i) pool.push_back({Point{0.0}, rng.uniform01()});
  for (int t = 0; t < 500; ++t) {
    const auto before = ys(pool);
    replace_into(pool, {Point{0.0}, rng.uniform01()}, 2, Replacement::worst, rng);
    const auto after = ys(pool);
    REQUIRE(after.size() == before.size());
    for (std::size_t i = 0; i < after.size(); ++i) CHECK(after[i] <= before[i]);
  }
}

TEST_CASE("all optimizers spend exactly the budget and keep a monotone trajectory") {
  for (Algorithm alg : {Algorithm::batch, Algorithm::sracos, Algorithm::racecars}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SyntheticObjective f(FunctionKind::sphere, 2);
      CountingObjective counted(f);
      OptimizerConfig c;
      c.budget = 200;
      c.train_size = 10;
      c.positive_size = 2;
      c.lambda = 0.95;
      c.rho = 0.05;
      c.seed = seed;
      const RunRecord rec = optimize(alg, counted, Region::cube(2, -10.0, 10.0), c);
      CHECK(counted.calls() == 200);
      check_trajectory(rec, 200);
      CHECK(rec.final_best() <= rec.trajectory[9].best_so_far);
    }
  }
}

TEST_CASE("batch with T not a multiple of r truncates the last round") {
  SyntheticObjective f(FunctionKind::sphere, 3);
  CountingObjective counted(f);
  OptimizerConfig c;
  c.budget = 47;
  c.train_size = 10;
  std::size_t steps = 0;
  const RunRecord rec = optimize_batch(counted, Region::cube(3, -1.0, 1.0), c,
                                       [&](const StepTrace&) { ++steps; });
  CHECK(counted.calls() == 47);
  CHECK(steps == 37);
  check_trajectory(rec, 47);
}

TEST_CASE("batch with T == r is plain uniform sampling") {
  SyntheticObjective f(FunctionKind::sphere, 2);
  OptimizerConfig c;
  c.budget = 10;
  c.train_size = 10;
  std::size_t steps = 0;
  const RunRecord rec =
      optimize_batch(f, Region::cube(2, -1.0, 1.0), c, [&](const StepTrace&) { ++steps; });
  CHECK(steps == 0);
  check_trajectory(rec, 10);

  RandomSource rng(c.seed);
  double best = INFINITY;
  for (int i = 0; i < 10; ++i) best = std::min(best, sphere(uniform_in(Region::cube(2, -1, 1), rng)));
  CHECK(rec.final_best() == best);
}

TEST_CASE("T == r + 1 trains exactly one hypothesis") {
  SyntheticObjective f(FunctionKind::ackley, 4);
  OptimizerConfig c;
  c.budget = 21;
  c.train_size = 20;
  std::size_t steps = 0;
  optimize_sracos(f, Region::cube(4, -10.0, 10.0), c, [&](const StepTrace&) { ++steps; });
  CHECK(steps == 1);
}

TEST_CASE("batch with lambda = 0 matches uniform random search in distribution") {
  const Region box = Region::cube(3, -10.0, 10.0);
  std::vector<double> batch, uniform;
  const std::size_t runs = 50, T = 100;
  for (std::size_t run = 0; run < runs; ++run) {
    SyntheticObjective f(FunctionKind::rastrigin, 3);
    OptimizerConfig c;
    c.budget = T;
    c.train_size = 10;
    c.lambda = 0.0;
    c.seed = derive_seed(1, run);
    batch.push_back(optimize_batch(f, box, c).final_best());
    RandomSource rng(derive_seed(2, run));
    double best = INFINITY;
    for (std::size_t t = 0; t < T; ++t) best = std::min(best, rastrigin(uniform_in(box, rng)));
    uniform.push_back(best);
  }
  // Critical value of the two-sample KS test at alpha = 0.01 for 50 vs 50.
  const double critical = 1.628 * std::sqrt(2.0 / runs);
  CHECK(ks_statistic(batch, uniform) < critical);
}

TEST_CASE("exploit draws lie in the projected region; shrunk regions shrink") {
  SyntheticObjective f(FunctionKind::ackley, 6);
  const Region boundary = Region::cube(6, -10.0, 10.0);
  OptimizerConfig c;
  c.budget = 600;
  c.rho = 0.05;
  for (ExploitSampler sampler : {ExploitSampler::anchored, ExploitSampler::box}) {
    c.exploit = sampler;
    Region last = boundary;
    int k = 0;
    std::size_t exploit = 0, explore = 0, degenerate = 0, checked = 0;
    const RunRecord rec = optimize_racecars(f, boundary, c, [&](const StepTrace& s) {
      ++checked;
      CHECK(boundary.encloses(s.shrunk));
      if (!(s.shrunk == last)) ++k;
      last = s.shrunk;
      // Clipping makes widths depend on the center, so only the unclipped
      // bound gamma^k |Omega| is monotone in k.
      for (double w : diameters(s.shrunk)) CHECK(w <= std::pow(c.gamma, k) * 20.0 * (1 + 1e-12));
      CHECK(s.exploit_region == project(s.hypothesis, s.shrunk));
      switch (s.draw.branch) {
        case Branch::exploit:
          ++exploit;
          CHECK(s.exploit_region->contains(s.draw.x));
          break;
        case Branch::exploit_degenerate:
          ++degenerate;
          CHECK_FALSE(s.exploit_region);
          CHECK(s.shrunk.contains(s.draw.x));
          break;
        case Branch::explore:
          ++explore;
          CHECK(boundary.contains(s.draw.x));
          break;
      }
    });
    CHECK(checked == 580);
    CHECK(rec.counters.shrink_events > 0);
    CHECK(static_cast<std::size_t>(k) <= rec.counters.shrink_events);
    CHECK(rec.counters.empty_projections == degenerate);
    CHECK(exploit + degenerate > explore);
  }
}

TEST_CASE("sracos exploits the trained box and explores the boundary") {
  SyntheticObjective f(FunctionKind::levy, 5);
  const Region boundary = Region::cube(5, -10.0, 10.0);
  OptimizerConfig c;
  c.budget = 300;
  optimize_sracos(f, boundary, c, [&](const StepTrace& s) {
    CHECK(s.shrunk == boundary);
    REQUIRE(s.exploit_region);
    CHECK(*s.exploit_region == s.hypothesis.active);
    if (s.draw.branch == Branch::exploit) CHECK(s.hypothesis(s.draw.x));
    CHECK(s.draw.branch != Branch::exploit_degenerate);
  });
}

TEST_CASE("seeded runs are identical") {
  for (Algorithm alg : {Algorithm::batch, Algorithm::sracos, Algorithm::racecars}) {
    SyntheticObjective f(FunctionKind::levy, 8);
    OptimizerConfig c;
    c.seed = 99;
    c.budget = 400;
    const RunRecord a = optimize(alg, f, Region::cube(8, -10, 10), c);
    const RunRecord b = optimize(alg, f, Region::cube(8, -10, 10), c);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    for (std::size_t i = 0; i < a.trajectory.size(); ++i) CHECK(a.trajectory[i].y == b.trajectory[i].y);
    CHECK(a.best.x == b.best.x);
  }
}

TEST_CASE("racecars with a vanishing shrink frequency reproduces sracos") {
  SyntheticObjective f(FunctionKind::ackley, 50);
  const Region boundary = Region::cube(50, -10.0, 10.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    OptimizerConfig c;
    c.seed = seed;
    c.rho = 1e-9;
    const RunRecord rc = optimize_racecars(f, boundary, c);
    const RunRecord sr = optimize_sracos(f, boundary, c);
    CHECK(rc.counters.shrink_events == 0);
    REQUIRE(rc.trajectory.size() == sr.trajectory.size());
    bool same = true;
    for (std::size_t i = 0; i < rc.trajectory.size(); ++i) same = same && rc.trajectory[i].y == sr.trajectory[i].y;
    CHECK(same);
  }
}

TEST_CASE("NaN values count as +inf") {
  struct NanEveryThird final : BlackBox {
    std::size_t calls = 0;
    std::size_t dimension() const override { return 2; }
    double evaluate(std::span<const double> x) override {
      return ++calls % 3 == 0 ? NAN : sphere(x);
    }
  } f;
  OptimizerConfig c;
  c.budget = 90;
  c.train_size = 6;
  const RunRecord rec = optimize_sracos(f, Region::cube(2, -1, 1), c);
  CHECK(rec.counters.nan_values == 30);
  check_trajectory(rec, 90);
  CHECK(std::isfinite(rec.final_best()));
}

TEST_CASE("duplicate samples are dropped from training, not fatal") {
  // A constant objective on a degenerate box makes every sample identical.
  SyntheticObjective f(FunctionKind::sphere, 2);
  const Region point_box({0.5, 0.5}, {0.5, 0.5});
  OptimizerConfig c;
  c.budget = 50;
  c.train_size = 5;
  const RunRecord rec = optimize_racecars(f, point_box, c);
  check_trajectory(rec, 50);
  CHECK(rec.counters.dropped_negatives > 0);
}

TEST_CASE("dimension mismatch is a precondition error") {
  SyntheticObjective f(FunctionKind::sphere, 3);
  CHECK_THROWS_AS(optimize_sracos(f, Region::cube(2, -1, 1), OptimizerConfig{}), PreconditionError);
}
