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
#include <optional>
#include <span>
#include <vector>

namespace racecars {

using Point = std::vector<double>;

/// Axis-aligned box [lower, upper] in R^n.
///
/// Zero-width dimensions are valid. Membership uses exact comparisons on
/// both faces (closed box), with no tolerance.
class Region {
 public:
  /// Throws PreconditionError if the bounds are empty, of unequal length,
  /// non-finite, or lower[i] > upper[i] for some i.
  Region(std::vector<double> lower, std::vector<double> upper);

  /// [lo, hi]^n.
  static Region cube(std::size_t n, double lo, double hi);

  std::size_t dimension() const noexcept { return lower_.size(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }

  bool contains(std::span<const double> x) const;

  /// True when `other` lies within this box in every dimension.
  bool encloses(const Region& other) const;

  bool operator==(const Region&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// An intersection that can be empty. nullopt is the empty marker.
using MaybeRegion = std::optional<Region>;

/// Per-dimension widths upper[i] - lower[i].
std::vector<double> diameters(const Region& region);

/// [center - gamma^k * |base| / 2, center + gamma^k * |base| / 2] clipped to
/// base. Requires center in base, 0 < gamma < 1 and k >= 1.
Region shrink_around(std::span<const double> center, const Region& base,
                     double gamma, int k);

/// Componentwise [max(lower), min(upper)], or nullopt if disjoint in any
/// dimension. Throws PreconditionError on dimension mismatch.
MaybeRegion intersect(const Region& a, const Region& b);

/// Lebesgue measure of inner relative to outer. `inner` is clipped to
/// `outer` first; an empty inner gives 0. Throws PreconditionError when
/// outer is degenerate in a dimension where the clipped inner is not.
double volume_fraction(const MaybeRegion& inner, const Region& outer);

}  // namespace racecars
