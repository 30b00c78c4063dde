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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "racecars/engine.hpp"
#include "racecars/sampling.hpp"
#include "racecars/space.hpp"

namespace racecars {

/// A Monte Carlo proportion with its binomial standard error.
struct Proportion {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
  std::size_t draws = 0;
};

/// The epsilon-sublevel set of an objective with known minimum, or any other
/// membership predicate supplied by the caller.
class TargetSet {
 public:
  using Membership = std::function<bool(std::span<const double>)>;

  /// Minimum number of uniform draws behind a measure estimate.
  static constexpr std::size_t min_measure_draws = 100000;

  /// Throws PreconditionError unless epsilon > 0.
  TargetSet(double epsilon, Membership member);

  /// {x : f(x) - f_star <= epsilon}.
  static TargetSet sublevel(std::function<double(std::span<const double>)> f, double f_star,
                            double epsilon);

  /// A box-shaped target, exposed through box_region().
  static TargetSet box(const Region& target, double epsilon = 1.0);

  double epsilon() const noexcept { return epsilon_; }
  bool contains(std::span<const double> x) const { return member_(x); }

  /// Estimates the target's share of `boundary` from `draws` uniform points
  /// (at least min_measure_draws) and keeps the result.
  const Proportion& estimate_measure(const Region& boundary, std::size_t draws, RandomSource& rng);

  /// The last estimate, if any.
  const std::optional<Proportion>& measure() const noexcept { return measure_; }

  /// Box targets only; nullopt otherwise.
  const MaybeRegion& box_region() const noexcept { return box_; }

 private:
  double epsilon_;
  Membership member_;
  MaybeRegion box_;
  std::optional<Proportion> measure_;
};

/// Estimate of P(target and h = 1) / P(target). Empty `eta` means no draw
/// landed in the target and the caller should raise N.
struct ShatteringEstimate {
  std::optional<double> eta;
  double std_error = 0.0;
  std::size_t target_hits = 0;
  std::size_t draws = 0;

  bool known() const noexcept { return eta.has_value(); }
};

/// Uniform draws over `boundary`, counting points in the target and in both
/// the target and `h_region`. Requires N >= 1000. An empty h_region gives 0
/// whenever the target was hit.
ShatteringEstimate estimate_shattering(const MaybeRegion& h_region, const TargetSet& target,
                                       const Region& boundary, std::size_t N, RandomSource& rng);

struct BoundInputs {
  double lambda = 0.0;
  double eta = 0.0;
  double p = 1.0;
  double target_measure = 0.0;  // |Omega_eps|
  double delta = 0.05;
  double r = 0.0;
  double T = 0.0;
  double gamma = 0.95;  // racecars only
  double rho = 0.01;    // racecars only

  /// Throws PreconditionError outside 0<delta<1, 0<measure<=1, eta in [0,1],
  /// p in (0,1], lambda in [0,1], 0 <= r <= T.
  void validate() const;
};

enum class BoundArm { full, first };

/// max{(lambda eta / p + 1 - lambda)^-1 (ln(1/delta)/|Omega_eps| - r) + r, T}.
/// BoundArm::first drops the T arm. Returns +inf when the coefficient is 0.
double bound_sracos(const BoundInputs& in, BoundArm arm = BoundArm::full);

/// Same shape with coefficient
/// ((gamma^-rho + gamma^-((T-r) rho)) / 2) lambda eta + 1 - lambda.
/// Also requires gamma, rho in (0,1).
double bound_racecars(const BoundInputs& in, BoundArm arm = BoundArm::full);

/// (1 - |Omega_eps|)^r ((1 - lambda)(1 - |Omega_eps|))^(T - r): the chance
/// that a sampler whose hypothesis is exactly the target never hits it.
double counterexample_failure_probability(double target_measure, double lambda, std::size_t r,
                                          std::size_t T);

struct HarnessResult {
  std::size_t runs = 0;
  std::size_t failures = 0;
  double rate = 0.0;
  double expected = 0.0;  // closed form
  double sigma = 0.0;     // binomial sigma of `rate` under `expected`

  /// |rate - expected| <= k sigma; when sigma is 0 the rates must be equal.
  bool agrees(double k = 4.0) const;
};

/// Simulates T sequential draws with the oracle hypothesis h = 1 on `target`:
/// r uniform draws over `boundary`, then T - r draws from the lambda-mixture
/// of target and boundary. A run fails if no draw lands in the target.
/// Requires target inside boundary, runs >= 1000 and T >= r.
HarnessResult run_counterexample_harness(const Region& target, const Region& boundary,
                                         double lambda, std::size_t r, std::size_t T,
                                         std::size_t runs, RandomSource& rng);

/// Hypothesis-side quantities at one guided step.
struct ShatteringSample {
  std::size_t eval_index;
  double p;  // share of the boundary covered by the exploit region
  ShatteringEstimate eta;
};

struct ShatteringSeries {
  std::vector<ShatteringSample> steps;
  /// Minimum over steps with a known eta; nullopt if there is none.
  std::optional<double> min_eta() const;
};

/// Observer that records p and eta of the exploit region every `stride`
/// guided steps, using `draws` Monte Carlo points per step. Keep `series`,
/// `target`, `boundary` and `rng` alive for as long as the observer is used.
StepObserver shattering_recorder(ShatteringSeries& series, const TargetSet& target,
                                 const Region& boundary, std::size_t draws, std::size_t stride,
                                 RandomSource& rng);

/// Tuning guidance for the shrinking schedule, given Hölder constants the
/// user believes in. Per dimension i the half-width after t steps,
/// 0.5 gamma^(t rho) |Omega|_i, should be at least
/// x_best_i - x_star_i + (eps / L_i)^(-beta_i). Advisory only.
struct ShrinkGuidance {
  std::vector<double> half_width;
  std::vector<double> required;
  bool satisfied = true;
};

ShrinkGuidance shrink_guidance(const Region& boundary, double gamma, double rho, double t,
                               std::span<const double> x_best, std::span<const double> x_star,
                               double epsilon, std::span<const double> L,
                               std::span<const double> beta);

}  // namespace racecars
