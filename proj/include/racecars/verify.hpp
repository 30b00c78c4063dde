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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "racecars/classifier.hpp"
#include "racecars/sampling.hpp"
#include "racecars/space.hpp"

namespace racecars {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Parameters of the self-check suite. The function members are the
/// implementations under test; tests swap in broken ones to prove the
/// checks can fail.
struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t harness_runs = 100000;
  std::size_t bound_tuples = 10000;
  std::size_t classifier_splits = 2000;
  std::size_t branch_draws = 100000;
  std::size_t region_trials = 10000;

  std::function<MixtureDraw(const MaybeRegion&, const Region&, double, RandomSource&)> mixture =
      [](const MaybeRegion& h, const Region& fallback, double lambda, RandomSource& rng) {
        return sample_mixture(h, fallback, lambda, rng);
      };
  std::function<Region(std::span<const double>, const Region&, double, int)> shrink =
      [](std::span<const double> c, const Region& base, double gamma, int k) {
        return shrink_around(c, base, gamma, k);
      };
  std::function<Hypothesis(const TrainingSplit&, const Region&, RandomSource&)> train =
      [](const TrainingSplit& split, const Region& boundary, RandomSource& rng) {
        return train_racos(split, boundary, rng);
      };
};

/// Counterexample harness, bound ordering and reductions, classifier
/// separation, mixture branch frequency, shrink containment and budget
/// exactness. Each check reports independently.
std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

/// One "PASS name: detail" or "FAIL name: detail" line per check.
void write_verify_report(std::ostream& os, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace racecars
