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


#include "racecars/space.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

Region::Region(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw PreconditionError("region must have at least one dimension");
  if (lower_.size() != upper_.size()) {
    throw PreconditionError(fmt::format("region bounds have {} lower and {} upper coordinates",
                                        lower_.size(), upper_.size()));
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw PreconditionError(fmt::format("region bound {} is not finite", i));
    }
    if (lower_[i] > upper_[i]) {
      throw PreconditionError(
          fmt::format("region dimension {} has lower {} > upper {}", i, lower_[i], upper_[i]));
    }
  }
}

Region Region::cube(std::size_t n, double lo, double hi) {
  return Region(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

bool Region::contains(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(lower_[i] <= x[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

bool Region::encloses(const Region& other) const {
  if (other.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (other.lower_[i] < lower_[i] || other.upper_[i] > upper_[i]) return false;
  }
  return true;
}

std::vector<double> diameters(const Region& region) {
  std::vector<double> d(region.dimension());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = region.upper(i) - region.lower(i);
  return d;
}

Region shrink_around(std::span<const double> center, const Region& base, double gamma, int k) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw PreconditionError(fmt::format("shrink rate must lie in (0,1), got {}", gamma));
  }
  if (k < 1) throw PreconditionError(fmt::format("shrink exponent must be >= 1, got {}", k));
  if (!base.contains(center)) throw PreconditionError("shrink center lies outside the base region");

  const double scale = 0.5 * std::pow(gamma, k);
  const std::size_t n = base.dimension();
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half = scale * (base.upper(i) - base.lower(i));
    lo[i] = std::max(center[i] - half, base.lower(i));
    hi[i] = std::min(center[i] + half, base.upper(i));
    // Rounding in center +/- half must never push the center outside.
    lo[i] = std::min(lo[i], center[i]);
    hi[i] = std::max(hi[i], center[i]);
  }
  return Region(std::move(lo), std::move(hi));
}

MaybeRegion intersect(const Region& a, const Region& b) {
  if (a.dimension() != b.dimension()) {
    throw PreconditionError(
        fmt::format("cannot intersect regions of dimension {} and {}", a.dimension(), b.dimension()));
  }
  const std::size_t n = a.dimension();
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::max(a.lower(i), b.lower(i));
    hi[i] = std::min(a.upper(i), b.upper(i));
    if (lo[i] > hi[i]) return std::nullopt;
  }
  return Region(std::move(lo), std::move(hi));
}

double volume_fraction(const MaybeRegion& inner, const Region& outer) {
  if (!inner) return 0.0;
  if (inner->dimension() != outer.dimension()) {
    throw PreconditionError("volume fraction of regions with different dimensions");
  }
  for (std::size_t i = 0; i < outer.dimension(); ++i) {
    if (outer.upper(i) == outer.lower(i) && inner->upper(i) != inner->lower(i)) {
      throw PreconditionError(
          fmt::format("outer region is degenerate in dimension {} where inner is not", i));
    }
  }
  const MaybeRegion clipped = intersect(*inner, outer);
  if (!clipped) return 0.0;
  double fraction = 1.0;
  for (std::size_t i = 0; i < outer.dimension(); ++i) {
    const double den = outer.upper(i) - outer.lower(i);
    if (den == 0.0) continue;
    fraction *= (clipped->upper(i) - clipped->lower(i)) / den;
  }
  return fraction;
}

}  // namespace racecars
