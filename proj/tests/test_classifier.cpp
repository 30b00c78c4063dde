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


#include <algorithm>
#include <vector>

#include <doctest.h>

#include "racecars/classifier.hpp"
#include "racecars/errors.hpp"

using namespace racecars;

namespace {

std::vector<Sample> pool_of(std::initializer_list<double> ys) {
  std::vector<Sample> pool;
  double i = 0;
  for (double y : ys) pool.push_back({Point{i++}, y});
  return pool;
}

std::vector<double> xs(const std::vector<const Sample*>& v) {
  std::vector<double> out;
  for (const Sample* s : v) out.push_back(s->x[0]);
  return out;
}

// Every face of the box sits on the boundary or strictly between the anchor
// and some negative in that dimension.
bool faces_valid(const Hypothesis& h, const TrainingSplit& split, const Region& boundary) {
  for (std::size_t d = 0; d < boundary.dimension(); ++d) {
    auto ok = [&](double face, double wall, bool upper) {
      if (face == wall) return true;
      for (const Sample* neg : split.negatives) {
        const double a = h.anchor[d], b = neg->x[d];
        if (upper && a < face && face < b) return true;
        if (!upper && b < face && face < a) return true;
      }
      return false;
    };
    if (!ok(h.active.lower(d), boundary.lower(d), false)) return false;
    if (!ok(h.active.upper(d), boundary.upper(d), true)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("classify_split examples") {
  auto p = pool_of({3, 1, 2});
  auto s = classify_split(p, 1);
  CHECK(xs(s.positives) == std::vector{1.0});
  CHECK(xs(s.negatives) == std::vector{0.0, 2.0});

  auto q = pool_of({1, 1, 2});
  CHECK(xs(classify_split(q, 1).positives) == std::vector{0.0});

  auto r = pool_of({5, 4, 3, 2, 1});
  auto t = classify_split(r, 2);
  auto pos = xs(t.positives);
  std::sort(pos.begin(), pos.end());
  CHECK(pos == std::vector{3.0, 4.0});
  CHECK(t.negatives.size() == 3);

  CHECK_THROWS_AS(classify_split(r, 5), PreconditionError);
  CHECK_THROWS_AS(classify_split(r, 0), PreconditionError);
}

TEST_CASE("train_racos single-cut traces") {
  const Region boundary({0.0}, {10.0});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rng(seed);
    std::vector<Sample> pool{{Point{0.5}, 0.0}, {Point{0.8}, 1.0}};
    auto split = classify_split(pool, 1);
    const Hypothesis h = train_racos(split, boundary, rng);
    CHECK(h.active.lower(0) == 0.0);
    CHECK(h.active.upper(0) > 0.5);
    CHECK(h.active.upper(0) < 0.8);
    CHECK_FALSE(h(Point{0.8}));
    CHECK(h(Point{0.5}));

    std::vector<Sample> pool2{{Point{0.8}, 0.0}, {Point{0.5}, 1.0}};
    const Hypothesis g = train_racos(classify_split(pool2, 1), boundary, rng);
    CHECK(g.active.upper(0) == 10.0);
    CHECK(g.active.lower(0) > 0.5);
    CHECK(g.active.lower(0) < 0.8);
  }
}

TEST_CASE("train_racos with no negatives keeps the boundary") {
  const Region boundary = Region::cube(3, -1.0, 1.0);
  RandomSource rng(1);
  Sample only{Point{0.1, 0.2, 0.3}, 0.0};
  TrainingSplit split{{&only}, {}};
  const Hypothesis h = train_racos(split, boundary, rng);
  CHECK(h.active == boundary);
  CHECK(h.anchor == only.x);
}

TEST_CASE("train_racos skips dimensions where anchor and negative coincide") {
  const Region boundary = Region::cube(3, 0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rng(seed);
    std::vector<Sample> pool{{Point{0.5, 0.5, 0.2}, 0.0}, {Point{0.5, 0.5, 0.7}, 1.0}};
    const auto split = classify_split(pool, 1);
    const Hypothesis h = train_racos(split, boundary, rng);
    CHECK(h.active.lower(0) == 0.0);
    CHECK(h.active.upper(0) == 1.0);
    CHECK(h.active.upper(2) < 0.7);
    CHECK_FALSE(h(pool[1].x));
  }
}

TEST_CASE("train_racos reports an unseparable negative") {
  const Region boundary = Region::cube(2, 0.0, 1.0);
  RandomSource rng(3);
  std::vector<Sample> pool{{Point{0.3, 0.3}, 0.0}, {Point{0.9, 0.1}, 2.0}, {Point{0.3, 0.3}, 1.0}};
  const auto split = classify_split(pool, 1);
  try {
    train_racos(split, boundary, rng);
    FAIL("expected UnseparableError");
  } catch (const UnseparableError& e) {
    CHECK(split.negatives[e.negative_index()] == &pool[2]);
  }
}

TEST_CASE("train_racos rejects points outside the boundary") {
  const Region boundary = Region::cube(1, 0.0, 1.0);
  RandomSource rng(1);
  std::vector<Sample> pool{{Point{0.5}, 0.0}, {Point{2.0}, 1.0}};
  CHECK_THROWS_AS(train_racos(classify_split(pool, 1), boundary, rng), PreconditionError);
}

TEST_CASE("training invariants on random splits") {
  RandomSource rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.index(20);
    const std::size_t r = 2 + rng.index(60);
    const std::size_t m = 1 + rng.index(r - 1);
    const Region boundary = Region::cube(n, -3.0, 2.0);
    std::vector<Sample> pool(r);
    for (auto& s : pool) s = {uniform_in(boundary, rng), rng.uniform01()};
    const auto split = classify_split(pool, m);
    const Hypothesis h = train_racos(split, boundary, rng);
    CHECK(h(h.anchor));
    CHECK(boundary.encloses(h.active));
    CHECK(std::find_if(split.positives.begin(), split.positives.end(),
                       [&](const Sample* s) { return s->x == h.anchor; }) != split.positives.end());
    for (const Sample* neg : split.negatives) CHECK_FALSE(h(neg->x));
    CHECK(faces_valid(h, split, boundary));
  }
}

TEST_CASE("training terminates on clustered and duplicated coordinates") {
  // Coordinates from a tiny grid make ties in most dimensions.
  RandomSource rng(6);
  const Region boundary = Region::cube(8, 0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Sample> pool(30);
    for (auto& s : pool) {
      s.x.resize(8);
      for (double& v : s.x) v = 0.5 * static_cast<double>(rng.index(3));
      s.y = rng.uniform01();
    }
    auto split = classify_split(pool, 2);
    // Drop exact copies of the anchor candidates so training can succeed.
    std::erase_if(split.negatives, [&](const Sample* s) {
      return std::any_of(split.positives.begin(), split.positives.end(),
                         [&](const Sample* p) { return p->x == s->x; });
    });
    const Hypothesis h = train_racos(split, boundary, rng);
    for (const Sample* neg : split.negatives) CHECK_FALSE(h(neg->x));
    CHECK(h(h.anchor));
  }
}

TEST_CASE("project examples and pointwise agreement") {
  const Hypothesis h{Region({0.0}, {4.0}), Point{1.0}};
  CHECK(project(h, Region({2.0}, {6.0})) == MaybeRegion(Region({2.0}, {4.0})));
  CHECK_FALSE(project(Hypothesis{Region({0.0}, {1.0}), Point{0.5}}, Region({2.0}, {3.0})));
  CHECK(project(h, Region({-1.0}, {5.0})) == MaybeRegion(h.active));

  RandomSource rng(12);
  const Region outer = Region::cube(2, 0.0, 1.0);
  auto random_box = [&] {
    const Point a = uniform_in(outer, rng), b = uniform_in(outer, rng);
    return Region({std::min(a[0], b[0]), std::min(a[1], b[1])},
                  {std::max(a[0], b[0]), std::max(a[1], b[1])});
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Region box = random_box();
    const Hypothesis g{box, Point(box.lower().begin(), box.lower().end())};
    const Region shrunk = random_box();
    const MaybeRegion p = project(g, shrunk);
    for (int i = 0; i < 50; ++i) {
      const Point x = uniform_in(outer, rng);
      CHECK((p && p->contains(x)) == (g(x) && shrunk.contains(x)));
    }
  }
}

TEST_CASE("hypothesis_measure examples") {
  const Region boundary({0.0, 0.0}, {2.0, 4.0});
  CHECK(hypothesis_measure(Hypothesis{boundary, Point{1.0, 1.0}}, boundary) == 1.0);
  CHECK(hypothesis_measure(Hypothesis{Region({0.0}, {1.0}), Point{0.5}}, Region({0.0}, {2.0})) ==
        0.5);
  CHECK(hypothesis_measure(Hypothesis{Region::cube(2, 0.0, 1.0), Point{0.5, 0.5}}, boundary) ==
        0.125);
}
