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


#include "racecars/objectives.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "racecars/errors.hpp"

namespace racecars {

double ackley(std::span<const double> x, bool shifted_cosine) {
  if (x.empty()) throw PreconditionError("ackley needs n >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double n = static_cast<double>(x.size());
  double squares = 0.0;
  double cosines = 0.0;
  for (const double xi : x) {
    squares += (xi - 0.2) * (xi - 0.2);
    cosines += std::cos(two_pi * (shifted_cosine ? xi - 0.2 : xi));
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(squares / n)) - std::exp(cosines / n) + std::numbers::e +
         20.0;
}

namespace {

// sin(pi v), exactly 0 at integers. remainder() is exact and folding into
// [-1/2, 1/2] keeps the argument small.
double sin_pi(double v) {
  double r = std::remainder(v, 2.0);
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

}  // namespace

double levy(std::span<const double> x) {
  if (x.size() < 2) throw PreconditionError("levy needs n >= 2");
  auto w = [](double xi) { return 1.0 + (xi - 1.0) / 4.0; };
  auto sq = [](double v) { return v * v; };
  const double w1 = w(x.front());
  const double wn = w(x.back());
  double f = sq(sin_pi(w1));
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double wi = w(x[i]);
    f += sq(wi - 1.0) * (1.0 + 10.0 * sq(std::sin(std::numbers::pi * wi + 1.0)));
  }
  f += sq(wn - 1.0) * (1.0 + sq(sin_pi(2.0 * wn)));
  return f;
}

double rastrigin(std::span<const double> x) {
  if (x.empty()) throw PreconditionError("rastrigin needs n >= 1");
  double f = 10.0 * static_cast<double>(x.size());
  for (const double xi : x) f += xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi);
  return f;
}

double sphere(std::span<const double> x) {
  if (x.empty()) throw PreconditionError("sphere needs n >= 1");
  double f = 0.0;
  for (const double xi : x) f += (xi - 0.2) * (xi - 0.2);
  return f;
}

std::optional<FunctionKind> parse_function_kind(std::string_view name) {
  if (name == "ackley") return FunctionKind::ackley;
  if (name == "levy") return FunctionKind::levy;
  if (name == "rastrigin") return FunctionKind::rastrigin;
  if (name == "sphere") return FunctionKind::sphere;
  return std::nullopt;
}

const char* to_string(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::ackley:
      return "ackley";
    case FunctionKind::levy:
      return "levy";
    case FunctionKind::rastrigin:
      return "rastrigin";
    case FunctionKind::sphere:
      return "sphere";
  }
  return "unknown";
}

SyntheticObjective::SyntheticObjective(FunctionKind kind, std::size_t n, bool ackley_shifted_cosine)
    : kind_(kind), n_(n), shifted_cosine_(ackley_shifted_cosine) {
  const std::size_t min_n = kind == FunctionKind::levy ? 2 : 1;
  if (n < min_n) {
    throw PreconditionError(fmt::format("{} needs n >= {}, got {}", to_string(kind), min_n, n));
  }
}

double SyntheticObjective::evaluate(std::span<const double> x) {
  if (x.size() != n_) {
    throw PreconditionError(fmt::format("expected a point of dimension {}, got {}", n_, x.size()));
  }
  switch (kind_) {
    case FunctionKind::ackley:
      return ackley(x, shifted_cosine_);
    case FunctionKind::levy:
      return levy(x);
    case FunctionKind::rastrigin:
      return rastrigin(x);
    case FunctionKind::sphere:
      return sphere(x);
  }
  return 0.0;
}

std::optional<KnownOptimum> known_optimum(const SyntheticObjective& objective) {
  const std::size_t n = objective.dimension();
  switch (objective.kind()) {
    case FunctionKind::ackley:
      if (!objective.shifted_cosine()) return std::nullopt;
      return KnownOptimum{Point(n, 0.2), 0.0};
    case FunctionKind::levy:
      return KnownOptimum{Point(n, 1.0), 0.0};
    case FunctionKind::rastrigin:
      return KnownOptimum{Point(n, 0.0), 0.0};
    case FunctionKind::sphere:
      return KnownOptimum{Point(n, 0.2), 0.0};
  }
  return std::nullopt;
}

std::string format_request(std::span<const double> x) {
  std::string line;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) line.push_back(' ');
    line += fmt::format("{}", x[i]);  // shortest round-trip representation
  }
  line.push_back('\n');
  return line;
}

double parse_reply(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' ')) {
    line.remove_suffix(1);
  }
  while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  if (line.empty()) throw EvaluationError("empty reply from objective");
  const std::string text(line);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw EvaluationError(fmt::format("reply '{}' is not a real number", text));
  }
  if (used != text.size()) {
    throw EvaluationError(fmt::format("reply '{}' must hold exactly one real number", text));
  }
  return value;
}

}  // namespace racecars
