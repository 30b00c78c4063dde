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

#include <iosfwd>
#include <string>
#include <vector>

namespace racecars {

enum ExitCode : int {
  exit_success = 0,
  exit_verify_failed = 1,
  exit_usage = 2,
  exit_runtime = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
///
/// Subcommands: run, ablate, bench, verify. Each accepts
/// `--config FILE`, a text file of `flag-name = value` lines (`#` starts a
/// comment); flags given on the command line override the file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace racecars
