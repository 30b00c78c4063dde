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


#include "racecars/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

TargetSet::TargetSet(double epsilon, Membership member)
    : epsilon_(epsilon), member_(std::move(member)) {
  if (!(epsilon > 0.0)) throw PreconditionError(fmt::format("epsilon must be > 0, got {}", epsilon));
  if (!member_) throw PreconditionError("target membership test is empty");
}

TargetSet TargetSet::sublevel(std::function<double(std::span<const double>)> f, double f_star,
                              double epsilon) {
  if (!f) throw PreconditionError("target objective is empty");
  return TargetSet(epsilon, [f = std::move(f), f_star, epsilon](std::span<const double> x) {
    return f(x) - f_star <= epsilon;
  });
}

TargetSet TargetSet::box(const Region& target, double epsilon) {
  TargetSet t(epsilon, [target](std::span<const double> x) { return target.contains(x); });
  t.box_ = target;
  return t;
}

const Proportion& TargetSet::estimate_measure(const Region& boundary, std::size_t draws,
                                              RandomSource& rng) {
  if (draws < min_measure_draws) {
    throw PreconditionError(
        fmt::format("measure estimate needs at least {} draws, got {}", min_measure_draws, draws));
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i) hits += contains(uniform_in(boundary, rng)) ? 1 : 0;
  const double q = static_cast<double>(hits) / static_cast<double>(draws);
  measure_ = Proportion{q, std::sqrt(q * (1.0 - q) / static_cast<double>(draws)), hits, draws};
  return *measure_;
}

ShatteringEstimate estimate_shattering(const MaybeRegion& h_region, const TargetSet& target,
                                       const Region& boundary, std::size_t N, RandomSource& rng) {
  if (N < 1000) throw PreconditionError(fmt::format("shattering estimate needs N >= 1000, got {}", N));
  if (h_region && h_region->dimension() != boundary.dimension()) {
    throw PreconditionError("hypothesis region dimension does not match boundary");
  }
  std::size_t in_target = 0;
  std::size_t in_both = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const Point x = uniform_in(boundary, rng);
    if (!target.contains(x)) continue;
    ++in_target;
    if (h_region && h_region->contains(x)) ++in_both;
  }
  ShatteringEstimate out;
  out.target_hits = in_target;
  out.draws = N;
  if (in_target == 0) return out;
  const double eta = static_cast<double>(in_both) / static_cast<double>(in_target);
  out.eta = eta;
  out.std_error = std::sqrt(eta * (1.0 - eta) / static_cast<double>(in_target));
  return out;
}

void BoundInputs::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0,1)");
  if (!(target_measure > 0.0 && target_measure <= 1.0)) {
    throw PreconditionError("target measure must lie in (0,1]");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) throw PreconditionError("eta must lie in [0,1]");
  if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0,1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("lambda must lie in [0,1]");
  if (!(r >= 0.0 && r <= T)) throw PreconditionError("need 0 <= r <= T");
}

namespace {

double bound_from(double coefficient, const BoundInputs& in, BoundArm arm) {
  if (coefficient == 0.0) return std::numeric_limits<double>::infinity();
  const double first = (std::log(1.0 / in.delta) / in.target_measure - in.r) / coefficient + in.r;
  return arm == BoundArm::first ? first : std::max(first, in.T);
}

}  // namespace

double bound_sracos(const BoundInputs& in, BoundArm arm) {
  in.validate();
  return bound_from(in.lambda * in.eta / in.p + (1.0 - in.lambda), in, arm);
}

double bound_racecars(const BoundInputs& in, BoundArm arm) {
  in.validate();
  if (!(in.gamma > 0.0 && in.gamma < 1.0)) throw PreconditionError("gamma must lie in (0,1)");
  if (!(in.rho > 0.0 && in.rho < 1.0)) throw PreconditionError("rho must lie in (0,1)");
  const double le = in.lambda * in.eta;
  // gamma^-((T-r) rho) overflows for long runs; 0 * inf must stay 0.
  double coefficient = 1.0 - in.lambda;
  if (le > 0.0) {
    const double growth =
        0.5 * (std::pow(in.gamma, -in.rho) + std::pow(in.gamma, -(in.T - in.r) * in.rho));
    coefficient += growth * le;
  }
  return bound_from(coefficient, in, arm);
}

double counterexample_failure_probability(double target_measure, double lambda, std::size_t r,
                                          std::size_t T) {
  if (!(target_measure > 0.0 && target_measure <= 1.0)) {
    throw PreconditionError("target measure must lie in (0,1]");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("lambda must lie in [0,1]");
  if (T < r) throw PreconditionError("need T >= r");
  const double miss = 1.0 - target_measure;
  return std::pow(miss, static_cast<double>(r)) *
         std::pow((1.0 - lambda) * miss, static_cast<double>(T - r));
}

bool HarnessResult::agrees(double k) const {
  if (sigma == 0.0) return rate == expected;
  return std::abs(rate - expected) <= k * sigma;
}

HarnessResult run_counterexample_harness(const Region& target, const Region& boundary,
                                         double lambda, std::size_t r, std::size_t T,
                                         std::size_t runs, RandomSource& rng) {
  if (runs < 1000) throw PreconditionError(fmt::format("harness needs runs >= 1000, got {}", runs));
  if (!boundary.encloses(target)) throw PreconditionError("target box must lie inside the boundary");
  const MaybeRegion oracle = target;
  const double measure = volume_fraction(oracle, boundary);
  HarnessResult out;
  out.runs = runs;
  out.expected = counterexample_failure_probability(measure, lambda, r, T);
  out.sigma = std::sqrt(out.expected * (1.0 - out.expected) / static_cast<double>(runs));
  for (std::size_t run = 0; run < runs; ++run) {
    bool hit = false;
    for (std::size_t t = 0; t < T && !hit; ++t) {
      const Point x = t < r ? uniform_in(boundary, rng)
                            : sample_mixture(oracle, boundary, lambda, rng).x;
      hit = target.contains(x);
    }
    if (!hit) ++out.failures;
  }
  out.rate = static_cast<double>(out.failures) / static_cast<double>(runs);
  return out;
}

std::optional<double> ShatteringSeries::min_eta() const {
  std::optional<double> best;
  for (const auto& s : steps) {
    if (s.eta.known() && (!best || *s.eta.eta < *best)) best = s.eta.eta;
  }
  return best;
}

StepObserver shattering_recorder(ShatteringSeries& series, const TargetSet& target,
                                 const Region& boundary, std::size_t draws, std::size_t stride,
                                 RandomSource& rng) {
  if (stride == 0) throw PreconditionError("stride must be >= 1");
  auto seen = std::make_shared<std::size_t>(0);
  return [&series, &target, &boundary, &rng, draws, stride, seen](const StepTrace& step) {
    if ((*seen)++ % stride != 0) return;
    series.steps.push_back({step.eval_index, volume_fraction(step.exploit_region, boundary),
                            estimate_shattering(step.exploit_region, target, boundary, draws, rng)});
  };
}

ShrinkGuidance shrink_guidance(const Region& boundary, double gamma, double rho, double t,
                               std::span<const double> x_best, std::span<const double> x_star,
                               double epsilon, std::span<const double> L,
                               std::span<const double> beta) {
  const std::size_t n = boundary.dimension();
  if (x_best.size() != n || x_star.size() != n || L.size() != n || beta.size() != n) {
    throw PreconditionError("guidance inputs must all have the boundary's dimension");
  }
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be > 0");
  ShrinkGuidance g;
  const double scale = 0.5 * std::pow(gamma, t * rho);
  const std::vector<double> widths = diameters(boundary);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(L[i] > 0.0 && beta[i] > 0.0)) throw PreconditionError("L and beta must be positive");
    g.half_width.push_back(scale * widths[i]);
    g.required.push_back(x_best[i] - x_star[i] + std::pow(epsilon / L[i], -beta[i]));
    if (g.half_width.back() < g.required.back()) g.satisfied = false;
  }
  return g;
}

}  // namespace racecars
