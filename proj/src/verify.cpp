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


#include "racecars/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "racecars/diagnostics.hpp"
#include "racecars/engine.hpp"
#include "racecars/errors.hpp"
#include "racecars/objectives.hpp"

namespace racecars {
namespace {

double between(RandomSource& rng, double lo, double hi) { return lo + rng.uniform01() * (hi - lo); }

std::size_t between(RandomSource& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.index(hi - lo + 1);
}

CheckResult check_harness(const VerifyOptions& o, RandomSource rng) {
  struct Case {
    Region target;
    double lambda;
    std::size_t r, T;
  };
  const Region unit = Region::cube(2, 0.0, 1.0);
  const std::vector<Case> cases = {
      {Region::cube(2, 0.0, 0.1), 0.5, 2, 10},
      {Region::cube(2, 0.0, 0.1), 0.0, 5, 20},
      {Region({0.3, 0.1}, {0.5, 0.6}), 0.3, 3, 12},
      {Region::cube(2, 0.0, 0.1), 1.0, 2, 10},
  };
  CheckResult out{"counterexample-harness", true, ""};
  for (const auto& c : cases) {
    const HarnessResult h = run_counterexample_harness(c.target, unit, c.lambda, c.r, c.T,
                                                       o.harness_runs, rng);
    const bool ok = h.agrees(4.0);
    out.passed = out.passed && ok;
    out.detail += fmt::format("{}lambda={} r={} T={}: {:.4e} vs {:.4e} (sigma {:.1e})",
                              out.detail.empty() ? "" : "; ", c.lambda, c.r, c.T, h.rate,
                              h.expected, h.sigma);
  }
  return out;
}

BoundInputs random_bound_inputs(RandomSource& rng) {
  BoundInputs in;
  in.lambda = 1.0 - rng.uniform01();  // (0, 1]
  in.eta = 1.0 - rng.uniform01();
  in.p = 1.0;
  in.target_measure = std::pow(10.0, -6.0 * rng.uniform01());
  in.delta = std::clamp(rng.uniform01(), 1e-9, 1.0 - 1e-9);
  in.r = static_cast<double>(between(rng, std::size_t{1}, std::size_t{1000}));
  in.T = in.r + static_cast<double>(between(rng, std::size_t{0}, std::size_t{100000}));
  in.gamma = std::clamp(rng.uniform01(), 1e-6, 1.0 - 1e-12);
  in.rho = std::clamp(rng.uniform01(), 1e-6, 1.0 - 1e-6);
  return in;
}

CheckResult check_bound_ordering(const VerifyOptions& o, RandomSource rng) {
  std::size_t violations = 0;
  for (std::size_t i = 0; i < o.bound_tuples; ++i) {
    const BoundInputs in = random_bound_inputs(rng);
    if (!(bound_racecars(in) <= bound_sracos(in))) ++violations;
  }
  return {"bound-ordering", violations == 0,
          fmt::format("{} violations in {} tuples", violations, o.bound_tuples)};
}

CheckResult check_bound_reductions() {
  BoundInputs in;
  in.target_measure = 0.01;
  in.delta = 0.05;
  in.r = 100;
  in.T = 150;
  const double uniform = std::log(20.0) / 0.01;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(b); };
  in.lambda = 0.0;
  bool ok = close(bound_sracos(in), uniform) && close(bound_racecars(in), uniform);
  in.lambda = 1.0;
  in.eta = 0.4;
  in.p = 0.4;
  ok = ok && close(bound_sracos(in), uniform);
  in.eta = 0.0;
  ok = ok && std::isinf(bound_sracos(in));
  return {"bound-reductions", ok, ok ? "lambda=0, eta=p and zero-coefficient cases" : "mismatch"};
}

CheckResult check_classifier(const VerifyOptions& o, RandomSource rng) {
  std::size_t leaks = 0, anchor_misses = 0, escapes = 0, unseparable = 0;
  for (std::size_t trial = 0; trial < o.classifier_splits; ++trial) {
    const std::size_t n = between(rng, std::size_t{1}, std::size_t{100});
    const std::size_t r = between(rng, std::size_t{2}, std::size_t{200});
    const std::size_t m = between(rng, std::size_t{1}, r - 1);
    const Region boundary = Region::cube(n, -1.0, 1.0);
    std::vector<Sample> pool(r);
    for (auto& s : pool) {
      s.x = uniform_in(boundary, rng);
      s.y = rng.uniform01();
    }
    const TrainingSplit split = classify_split(pool, m);
    try {
      const Hypothesis h = o.train(split, boundary, rng);
      if (!h.active.contains(h.anchor)) ++anchor_misses;
      if (!boundary.encloses(h.active)) ++escapes;
      for (const Sample* neg : split.negatives) leaks += h(neg->x) ? 1 : 0;
    } catch (const UnseparableError&) {
      ++unseparable;
    }
  }
  const bool ok = leaks + anchor_misses + escapes + unseparable == 0;
  return {"classifier-separation", ok,
          fmt::format("{} splits: {} negatives inside, {} anchors outside, {} boxes outside "
                      "boundary, {} unseparable",
                      o.classifier_splits, leaks, anchor_misses, escapes, unseparable)};
}

CheckResult check_branch_frequency(const VerifyOptions& o, RandomSource rng) {
  const Region unit = Region::cube(2, 0.0, 1.0);
  const MaybeRegion h = Region::cube(2, 0.0, 0.5);
  const double lambda = 0.9;
  std::size_t exploit = 0, misplaced = 0, degenerate = 0;
  for (std::size_t i = 0; i < o.branch_draws; ++i) {
    const MixtureDraw d = o.mixture(h, unit, lambda, rng);
    if (d.branch == Branch::exploit) {
      ++exploit;
      if (!h->contains(d.x)) ++misplaced;
    } else if (!unit.contains(d.x)) {
      ++misplaced;
    }
    if (o.mixture(std::nullopt, unit, lambda, rng).branch == Branch::exploit_degenerate) {
      ++degenerate;
    }
  }
  const double draws = static_cast<double>(o.branch_draws);
  const double sigma = std::sqrt(lambda * (1.0 - lambda) / draws);
  const double rate = static_cast<double>(exploit) / draws;
  const double degenerate_rate = static_cast<double>(degenerate) / draws;
  const bool ok = std::abs(rate - lambda) <= 4.0 * sigma &&
                  std::abs(degenerate_rate - lambda) <= 4.0 * sigma && misplaced == 0;
  return {"mixture-branch-frequency", ok,
          fmt::format("exploit rate {:.4f}, degenerate rate {:.4f} (lambda {}, sigma {:.1e}), {} "
                      "misplaced",
                      rate, degenerate_rate, lambda, sigma, misplaced)};
}

CheckResult check_shrink(const VerifyOptions& o, RandomSource rng) {
  std::size_t failures = 0;
  for (std::size_t i = 0; i < o.region_trials; ++i) {
    const std::size_t n = between(rng, std::size_t{1}, std::size_t{10});
    Point lo(n), hi(n);
    for (std::size_t d = 0; d < n; ++d) {
      lo[d] = between(rng, -10.0, 0.0);
      hi[d] = lo[d] + between(rng, 0.1, 20.0);
    }
    const Region base(lo, hi);
    // Centers near the walls exercise the clipping.
    Point c = uniform_in(base, rng);
    if (rng.uniform01() < 0.5) {
      const std::size_t d = rng.index(n);
      c[d] = rng.uniform01() < 0.5 ? lo[d] : hi[d];
    }
    const double gamma = between(rng, 0.05, 0.99);
    const int k = static_cast<int>(between(rng, std::size_t{1}, std::size_t{30}));
    const Region s = o.shrink(c, base, gamma, k);
    bool ok = base.encloses(s) && s.contains(c);
    for (std::size_t d = 0; d < n && ok; ++d) {
      const double w = std::pow(gamma, k) * (hi[d] - lo[d]);
      ok = s.upper(d) - s.lower(d) <= w * (1.0 + 1e-12) + 1e-12;
    }
    failures += ok ? 0 : 1;
  }
  return {"shrink-containment", failures == 0,
          fmt::format("{} of {} shrunk regions outside base, missing the center or too wide",
                      failures, o.region_trials)};
}

CheckResult check_budget(RandomSource rng) {
  std::size_t mismatches = 0, runs = 0;
  for (Algorithm alg : {Algorithm::batch, Algorithm::sracos, Algorithm::racecars}) {
    for (int i = 0; i < 10; ++i) {
      const std::size_t n = between(rng, std::size_t{2}, std::size_t{8});
      SyntheticObjective f(FunctionKind::sphere, n);
      CountingObjective counted(f);
      OptimizerConfig c;
      c.train_size = between(rng, std::size_t{2}, std::size_t{12});
      c.positive_size = between(rng, std::size_t{1}, c.train_size - 1);
      c.budget = c.train_size + between(rng, std::size_t{1}, std::size_t{150});
      c.rho = between(rng, 0.01, 0.5);
      c.seed = rng.next();
      const RunRecord rec = optimize(alg, counted, Region::cube(n, -10.0, 10.0), c);
      if (counted.calls() != c.budget || rec.trajectory.size() != c.budget) ++mismatches;
      ++runs;
    }
  }
  return {"budget-exactness", mismatches == 0,
          fmt::format("{} of {} runs used a call count other than the budget", mismatches, runs)};
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  const RandomSource root(options.seed);
  return {
      check_harness(options, root.fork(1)),
      check_bound_ordering(options, root.fork(2)),
      check_bound_reductions(),
      check_classifier(options, root.fork(3)),
      check_branch_frequency(options, root.fork(4)),
      check_shrink(options, root.fork(5)),
      check_budget(root.fork(6)),
  };
}

void write_verify_report(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace racecars
