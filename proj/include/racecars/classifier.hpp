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
#include <span>
#include <vector>

#include "racecars/sampling.hpp"
#include "racecars/space.hpp"

namespace racecars {

/// A solution and its objective value, evaluated exactly once.
struct Sample {
  Point x;
  double y = 0.0;
};

/// Best-m / rest partition of a training pool. The pointers view samples
/// owned by the pool passed to classify_split and are only valid while that
/// pool is left untouched.
struct TrainingSplit {
  std::vector<const Sample*> positives;
  std::vector<const Sample*> negatives;
};

/// Box classifier: h(x) = 1 iff x lies in `active`.
struct Hypothesis {
  Region active;
  Point anchor;

  bool operator()(std::span<const double> x) const { return active.contains(x); }
};

/// Positives are the m samples with the smallest y; equal values keep their
/// pool order. Requires samples.size() > m >= 1.
TrainingSplit classify_split(std::span<const Sample> samples, std::size_t m);

/// Randomized coordinate shrinking.
///
/// Picks an anchor uniformly from the positives, starts from h == 1 on
/// `boundary`, and while some negative is still inside the active box, cuts a
/// random dimension at a point strictly between the anchor and a random
/// violating negative. Dimensions where the two coincide are skipped. After
/// 20 * n cuts any remaining violators are cut deterministically at the
/// midpoint of their widest gap to the anchor.
///
/// Throws UnseparableError (carrying the negative's index) if a negative
/// equals the anchor in every coordinate.
Hypothesis train_racos(const TrainingSplit& split, const Region& boundary, RandomSource& rng);

/// Active region of h restricted to `shrunk`; nullopt when they are disjoint.
MaybeRegion project(const Hypothesis& h, const Region& shrunk);

/// P({x in boundary : h(x) = 1}) under the uniform measure on boundary.
double hypothesis_measure(const Hypothesis& h, const Region& boundary);

}  // namespace racecars
