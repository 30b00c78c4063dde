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


#include "racecars/experiment.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "racecars/errors.hpp"
#include "racecars/sampling.hpp"

namespace racecars {

void ExperimentSpec::validate() const {
  if (n == 0) throw PreconditionError("dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw PreconditionError(fmt::format("radius must be positive and finite, got {}", radius));
  }
  if (reps == 0) throw PreconditionError("repetitions must be >= 1");
  if (workers == 0) throw PreconditionError("workers must be >= 1");
  if (!(timeout > 0.0)) throw PreconditionError("timeout must be positive");
  if (external.empty()) {
    const auto kind = parse_function_kind(function);
    if (!kind) throw PreconditionError(fmt::format("unknown function '{}'", function));
    if (*kind == FunctionKind::levy && n < 2) throw PreconditionError("levy needs n >= 2");
  }
  config.validate(algorithm);
}

std::uint64_t ExperimentSpec::run_seed(std::size_t rep) const {
  return derive_seed(config.seed, rep);
}

std::unique_ptr<BlackBox> ExperimentSpec::make_objective() const {
  if (!external.empty()) return external_objective(external, n, timeout);
  const auto kind = parse_function_kind(function);
  if (!kind) throw PreconditionError(fmt::format("unknown function '{}'", function));
  return std::make_unique<SyntheticObjective>(*kind, n, ackley_shifted_cosine);
}

std::string ExperimentSpec::objective_name() const {
  return external.empty() ? function : "external";
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Region boundary = spec.boundary();
  return run_indexed<RunRecord>(spec.reps, spec.workers, [&](std::size_t rep) {
    OptimizerConfig config = spec.config;
    config.seed = spec.run_seed(rep);
    std::unique_ptr<BlackBox> f;
    try {
      f = spec.make_objective();
    } catch (const ObjectiveFailure& e) {
      RunRecord failed;
      failed.failure = e.what();
      return failed;
    }
    return optimize(spec.algorithm, *f, boundary, config);
  });
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw PreconditionError("cannot summarize an empty sample");
  Summary s;
  s.min = values.front();
  s.max = values.front();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::vector<double> final_values(const std::vector<RunRecord>& records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.final_best());
  return out;
}

PairedTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw PreconditionError("paired samples must have equal size");
  if (a.size() < 2) throw PreconditionError("paired test needs at least two pairs");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const Summary s = summarize(d);
  PairedTest out;
  out.df = d.size() - 1;
  out.mean_difference = s.mean;
  if (s.stdev == 0.0) {
    out.t = s.mean > 0.0 ? INFINITY : (s.mean < 0.0 ? -INFINITY : 0.0);
    out.p_value = s.mean > 0.0 ? 0.0 : 1.0;
    return out;
  }
  out.t = s.mean / (s.stdev / std::sqrt(static_cast<double>(d.size())));
  const boost::math::students_t dist(static_cast<double>(out.df));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.t));
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

void write_trajectory_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "run_id,eval_index,y,best_so_far\n";
  for (std::size_t run = 0; run < records.size(); ++run) {
    for (const auto& p : records[run].trajectory) {
      os << run << ',' << p.eval_index << ',' << format_real(p.y) << ','
         << format_real(p.best_so_far) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, const ExperimentSpec& spec,
                       const std::vector<RunRecord>& records) {
  const OptimizerConfig& c = spec.config;
  os << "alg,fn,n,radius,budget,train_size,pos_size,lambda,gamma,rho,replace,exploit,"
        "exploit_coords,reps,seed,ackley_shifted_cosine,mean,std,min,max\n";
  const Summary s = summarize(final_values(records));
  os << to_string(spec.algorithm) << ',' << spec.objective_name() << ',' << spec.n << ','
     << format_real(spec.radius) << ',' << c.budget << ',' << c.train_size << ','
     << c.positive_size << ',' << format_real(c.lambda) << ',' << format_real(c.gamma) << ','
     << format_real(c.rho) << ',' << to_string(c.replacement) << ',' << to_string(c.exploit)
     << ',' << c.exploit_coordinates << ',' << spec.reps << ',' << c.seed << ','
     << (spec.ackley_shifted_cosine ? 1 : 0) << ',' << format_real(s.mean) << ','
     << format_real(s.stdev) << ',' << format_real(s.min) << ',' << format_real(s.max) << '\n';
}

namespace {

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw PreconditionError(fmt::format("'{}' is not a finite number", text));
  }
  return v;
}

// Digits after the decimal point, so range values print as written.
int decimals(std::string_view text) {
  const std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) return 0;
  std::size_t end = dot + 1;
  while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
  return static_cast<int>(end - dot - 1);
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    if (item.empty()) throw PreconditionError(fmt::format("empty entry in list '{}'", text));
    const std::size_t c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_real(item));
    } else {
      const std::size_t c2 = item.find(':', c1 + 1);
      if (c2 == std::string_view::npos) {
        throw PreconditionError(fmt::format("range '{}' must be lo:hi:step", item));
      }
      const double lo = parse_real(item.substr(0, c1));
      const double hi = parse_real(item.substr(c1 + 1, c2 - c1 - 1));
      const double step = parse_real(item.substr(c2 + 1));
      const int places =
          std::min(15, std::max(decimals(item.substr(0, c1)), decimals(item.substr(c2 + 1))));
      const double scale = std::pow(10.0, places);
      if (!(step > 0.0) || hi < lo) {
        throw PreconditionError(fmt::format("range '{}' needs lo <= hi and step > 0", item));
      }
      const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::round((lo + static_cast<double>(i) * step) * scale) / scale);
      }
    }
    start = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_list(text)) {
    if (v < 0.0 || v != std::floor(v)) {
      throw PreconditionError(fmt::format("'{}' must list non-negative integers", text));
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace racecars
