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


#include "racecars/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

TrainingSplit classify_split(std::span<const Sample> samples, std::size_t m) {
  if (m < 1 || samples.size() <= m) {
    throw PreconditionError(
        fmt::format("need pool size > positive size >= 1, got {} and {}", samples.size(), m));
  }
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].y < samples[b].y; });

  // Negatives keep pool order; only membership matters to training.
  std::vector<bool> positive(samples.size(), false);
  TrainingSplit split;
  split.positives.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    positive[order[i]] = true;
    split.positives.push_back(&samples[order[i]]);
  }
  split.negatives.reserve(samples.size() - m);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!positive[i]) split.negatives.push_back(&samples[i]);
  }
  return split;
}

namespace {

class BoxTrainer {
 public:
  BoxTrainer(const Point& anchor, const Region& boundary)
      : anchor_(anchor),
        lower_(boundary.lower().begin(), boundary.lower().end()),
        upper_(boundary.upper().begin(), boundary.upper().end()) {}

  // Cuts dimension k at s, which lies strictly between the anchor and
  // `toward`, and drops every violator that the cut excludes.
  void cut(std::size_t k, double toward, double s, std::vector<const Sample*>& violating) {
    const double a = anchor_[k];
    if (!(std::min(a, toward) < s && s < std::max(a, toward))) s = a;
    if (a < toward) {
      upper_[k] = std::min(upper_[k], s);
      std::erase_if(violating, [&](const Sample* neg) { return neg->x[k] > s; });
    } else {
      lower_[k] = std::max(lower_[k], s);
      std::erase_if(violating, [&](const Sample* neg) { return neg->x[k] < s; });
    }
  }

  bool inside(const Point& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
    }
    return true;
  }

  Region region() && { return Region(std::move(lower_), std::move(upper_)); }

 private:
  const Point& anchor_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace

Hypothesis train_racos(const TrainingSplit& split, const Region& boundary, RandomSource& rng) {
  if (split.positives.empty()) throw PreconditionError("training needs at least one positive");
  const std::size_t n = boundary.dimension();
  const Point& anchor = split.positives[rng.index(split.positives.size())]->x;
  if (!boundary.contains(anchor)) throw PreconditionError("positive sample outside the boundary");

  std::vector<const Sample*> violating;
  violating.reserve(split.negatives.size());
  for (std::size_t i = 0; i < split.negatives.size(); ++i) {
    const Point& x = split.negatives[i]->x;
    if (!boundary.contains(x)) throw PreconditionError("negative sample outside the boundary");
    if (std::equal(x.begin(), x.end(), anchor.begin())) {
      throw UnseparableError(i, "negative sample coincides with the positive anchor");
    }
    violating.push_back(split.negatives[i]);
  }

  BoxTrainer trainer(anchor, boundary);
  const std::size_t max_random_cuts = 20 * n;
  std::vector<std::size_t> differing;
  for (std::size_t cuts = 0; !violating.empty() && cuts < max_random_cuts; ++cuts) {
    std::size_t k = rng.index(n);
    const Sample* neg = violating[rng.index(violating.size())];
    if (neg->x[k] == anchor[k]) {
      differing.clear();
      for (std::size_t d = 0; d < n; ++d) {
        if (neg->x[d] != anchor[d]) differing.push_back(d);
      }
      k = differing[rng.index(differing.size())];
    }
    const double a = anchor[k];
    const double b = neg->x[k];
    const double s = a < b ? uniform_open(a, b, rng) : uniform_open(b, a, rng);
    trainer.cut(k, b, s, violating);
  }

  // Deterministic completion; with continuous data this is practically
  // unreachable.
  while (!violating.empty()) {
    const Sample* neg = violating.front();
    if (!trainer.inside(neg->x)) {
      violating.erase(violating.begin());
      continue;
    }
    std::size_t widest = 0;
    for (std::size_t d = 1; d < n; ++d) {
      if (std::abs(neg->x[d] - anchor[d]) > std::abs(neg->x[widest] - anchor[widest])) widest = d;
    }
    const double b = neg->x[widest];
    trainer.cut(widest, b, anchor[widest] + 0.5 * (b - anchor[widest]), violating);
  }

  return Hypothesis{std::move(trainer).region(), anchor};
}

MaybeRegion project(const Hypothesis& h, const Region& shrunk) { return intersect(h.active, shrunk); }

double hypothesis_measure(const Hypothesis& h, const Region& boundary) {
  return volume_fraction(h.active, boundary);
}

}  // namespace racecars
