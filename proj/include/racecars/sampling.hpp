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

#include <cstdint>
#include <random>

#include "racecars/space.hpp"

namespace racecars {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for repetition `run` of an experiment with base seed `base`.
/// Stable across releases: splitmix64(base ^ splitmix64(run + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run) noexcept;

/// Seedable 64-bit generator. Owned by exactly one run; not thread-safe.
///
/// All real-valued draws are built from raw 64-bit outputs so the stream is
/// identical across standard library implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// An independent stream for sub-task `stream`.
  RandomSource fork(std::uint64_t stream) const { return RandomSource(derive_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Independent uniform coordinates; degenerate dimensions return their
/// single value.
Point uniform_in(const Region& region, RandomSource& rng);

/// Uniform on the open interval (a, b). Throws PreconditionError if a >= b.
/// Endpoint draws are rejected up to 100 times, after which the midpoint
/// is returned.
double uniform_open(double a, double b, RandomSource& rng);

/// Copies `anchor` (clamped into region) and redraws `coordinates` distinct,
/// uniformly chosen dimensions uniformly within region. With coordinates == 0
/// or >= n every dimension is redrawn, which is exactly uniform_in(region).
Point uniform_around_anchor(const Region& region, std::span<const double> anchor,
                            std::size_t coordinates, RandomSource& rng);

/// How the exploit branch draws from the hypothesis region.
struct ExploitRule {
  std::span<const double> anchor;  // empty: plain uniform_in
  std::size_t coordinates = 0;     // see uniform_around_anchor
};

enum class Branch { explore, exploit, exploit_degenerate };

const char* to_string(Branch branch) noexcept;

struct MixtureDraw {
  Point x;
  Branch branch;
};

/// With probability lambda draws from `exploit_region` (tag exploit),
/// otherwise from `fallback` (tag explore). An empty exploit region makes the
/// exploit branch draw from `fallback` instead, tagged exploit_degenerate.
MixtureDraw sample_mixture(const MaybeRegion& exploit_region, const Region& fallback, double lambda,
                           RandomSource& rng);

/// Variant where the explore branch and the degenerate-exploit branch use
/// different regions. RACE-CARS explores the full boundary but falls back to
/// the shrunk region when the projected hypothesis is empty.
MixtureDraw sample_mixture(const MaybeRegion& exploit_region, const Region& explore_region,
                           const Region& degenerate_region, double lambda, RandomSource& rng,
                           const ExploitRule& rule = {});

}  // namespace racecars
