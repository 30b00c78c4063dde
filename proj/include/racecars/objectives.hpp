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

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "racecars/space.hpp"

namespace racecars {

/// What an optimizer is allowed to see: a dimension and function values.
class BlackBox {
 public:
  virtual ~BlackBox() = default;
  virtual std::size_t dimension() const = 0;
  /// May throw EvaluationError (one bad value) or ObjectiveFailure (the
  /// objective is gone).
  virtual double evaluate(std::span<const double> x) = 0;
};

// Benchmark functions, minimized on [-10, 10]^n in the experiments.

/// -20 exp(-0.2 sqrt(sum (x_i - 0.2)^2 / n)) - exp(sum cos(2 pi c_i) / n) + e + 20,
/// where c_i = x_i by default and c_i = x_i - 0.2 with `shifted_cosine`.
double ackley(std::span<const double> x, bool shifted_cosine = false);
/// Levy with w_i = 1 + (x_i - 1) / 4. Requires n >= 2.
double levy(std::span<const double> x);
double rastrigin(std::span<const double> x);
/// sum (x_i - 0.2)^2.
double sphere(std::span<const double> x);

enum class FunctionKind { ackley, levy, rastrigin, sphere };

std::optional<FunctionKind> parse_function_kind(std::string_view name);
const char* to_string(FunctionKind kind) noexcept;

class SyntheticObjective final : public BlackBox {
 public:
  SyntheticObjective(FunctionKind kind, std::size_t n, bool ackley_shifted_cosine = false);

  std::size_t dimension() const override { return n_; }
  double evaluate(std::span<const double> x) override;

  FunctionKind kind() const noexcept { return kind_; }
  bool shifted_cosine() const noexcept { return shifted_cosine_; }

 private:
  FunctionKind kind_;
  std::size_t n_;
  bool shifted_cosine_;
};

/// Known minimizer and minimum of a synthetic objective.
struct KnownOptimum {
  Point minimizer;
  double minimum;
};

/// Diagnostics-only access to the optimum. Not part of BlackBox, so the
/// optimizers cannot reach it. Returns nullopt for the unshifted Ackley,
/// whose minimizer is not known in closed form.
std::optional<KnownOptimum> known_optimum(const SyntheticObjective& objective);

/// Forwards to `inner` and counts every call, including failed ones.
class CountingObjective final : public BlackBox {
 public:
  explicit CountingObjective(BlackBox& inner) : inner_(inner) {}

  std::size_t dimension() const override { return inner_.dimension(); }
  double evaluate(std::span<const double> x) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.evaluate(x);
  }

  std::size_t calls() const noexcept { return calls_.load(std::memory_order_relaxed); }

 private:
  BlackBox& inner_;
  std::atomic<std::size_t> calls_{0};
};

/// Serializes x as one request line of space-separated reals.
std::string format_request(std::span<const double> x);
/// Parses a reply line holding exactly one real. Throws EvaluationError.
double parse_reply(std::string_view line);

/// A child process speaking the line protocol on its standard streams.
///
/// On start the adapter receives "DIM n" and must answer "OK". Each
/// evaluation sends one request line and reads one reply line.
class SubprocessObjective final : public BlackBox {
 public:
  /// Spawns `command` through /bin/sh -c and performs the handshake.
  /// Throws ObjectiveFailure on spawn or handshake failure.
  SubprocessObjective(const std::string& command, std::size_t n, double timeout_seconds = 60.0);
  ~SubprocessObjective() override;

  SubprocessObjective(const SubprocessObjective&) = delete;
  SubprocessObjective& operator=(const SubprocessObjective&) = delete;

  std::size_t dimension() const override { return n_; }
  double evaluate(std::span<const double> x) override;

  /// Process id of the shell running the adapter. It leads a process
  /// group holding the adapter and anything it starts.
  int pid() const noexcept { return pid_; }

 private:
  void write_line(const std::string& line);
  std::string read_line();
  void shutdown() noexcept;

  std::size_t n_;
  double timeout_seconds_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool broken_ = false;
};

/// POSTs each request line to `url` and reads the reply from the body.
class HttpObjective final : public BlackBox {
 public:
  HttpObjective(const std::string& url, std::size_t n, double timeout_seconds = 60.0);
  ~HttpObjective() override;

  std::size_t dimension() const override { return n_; }
  double evaluate(std::span<const double> x) override;

 private:
  struct Client;
  std::size_t n_;
  std::string path_;
  std::unique_ptr<Client> client_;
};

/// http:// URLs select the HTTP transport; https:// is rejected with
/// PreconditionError. Anything else is run as a shell command.
std::unique_ptr<BlackBox> external_objective(const std::string& command_or_endpoint, std::size_t n,
                                             double timeout_seconds = 60.0);

}  // namespace racecars
