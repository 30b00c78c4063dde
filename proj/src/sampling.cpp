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


#include "racecars/sampling.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) noexcept {
  return splitmix64(base ^ splitmix64(run + 1));
}

std::size_t RandomSource::index(std::size_t n) {
  if (n == 0) throw PreconditionError("cannot draw an index from an empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<std::size_t>(v % bound);
}

Point uniform_in(const Region& region, RandomSource& rng) {
  Point x(region.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = region.lower(i);
    const double hi = region.upper(i);
    x[i] = std::min(lo + rng.uniform01() * (hi - lo), hi);
  }
  return x;
}

Point uniform_around_anchor(const Region& region, std::span<const double> anchor,
                            std::size_t coordinates, RandomSource& rng) {
  const std::size_t n = region.dimension();
  if (anchor.size() != n) throw PreconditionError("anchor dimension does not match region");
  if (coordinates == 0 || coordinates >= n) return uniform_in(region, rng);
  Point x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(anchor[i], region.lower(i), region.upper(i));
  // Partial Fisher-Yates over the dimension indices.
  std::vector<std::size_t> dims(n);
  for (std::size_t i = 0; i < n; ++i) dims[i] = i;
  for (std::size_t j = 0; j < coordinates; ++j) {
    std::swap(dims[j], dims[j + rng.index(n - j)]);
    const std::size_t d = dims[j];
    const double lo = region.lower(d);
    const double hi = region.upper(d);
    x[d] = std::min(lo + rng.uniform01() * (hi - lo), hi);
  }
  return x;
}

double uniform_open(double a, double b, RandomSource& rng) {
  if (!(a < b)) throw PreconditionError(fmt::format("open interval ({}, {}) is empty", a, b));
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double v = a + rng.uniform01() * (b - a);
    if (a < v && v < b) return v;
  }
  return a + 0.5 * (b - a);
}

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::explore:
      return "explore";
    case Branch::exploit:
      return "exploit";
    case Branch::exploit_degenerate:
      return "exploit-degenerate";
  }
  return "unknown";
}

MixtureDraw sample_mixture(const MaybeRegion& exploit_region, const Region& fallback, double lambda,
                           RandomSource& rng) {
  return sample_mixture(exploit_region, fallback, fallback, lambda, rng);
}

MixtureDraw sample_mixture(const MaybeRegion& exploit_region, const Region& explore_region,
                           const Region& degenerate_region, double lambda, RandomSource& rng,
                           const ExploitRule& rule) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw PreconditionError(fmt::format("exploitation rate must lie in [0,1], got {}", lambda));
  }
  if (rng.uniform01() < lambda) {
    if (exploit_region) {
      if (rule.anchor.empty()) return {uniform_in(*exploit_region, rng), Branch::exploit};
      return {uniform_around_anchor(*exploit_region, rule.anchor, rule.coordinates, rng),
              Branch::exploit};
    }
    return {uniform_in(degenerate_region, rng), Branch::exploit_degenerate};
  }
  return {uniform_in(explore_region, rng), Branch::explore};
}

}  // namespace racecars
