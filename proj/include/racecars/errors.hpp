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
#include <stdexcept>
#include <string>

namespace racecars {

// Raised when a caller violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A negative training sample coincides with the positive anchor in every
// coordinate, so no axis-aligned cut can separate them.
class UnseparableError : public std::runtime_error {
 public:
  UnseparableError(std::size_t negative_index, const std::string& what)
      : std::runtime_error(what), negative_index_(negative_index) {}

  // Position of the offending sample within TrainingSplit::negatives.
  std::size_t negative_index() const noexcept { return negative_index_; }

 private:
  std::size_t negative_index_;
};

// A single evaluation failed but the objective is still usable (malformed
// reply, non-numeric output). The engine records +inf for that evaluation.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The objective can no longer be evaluated at all (child exited, timeout,
// connection lost). The engine aborts the run and returns what it has.
class ObjectiveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace racecars
