// Copyright 2026 The qflow Authors
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

// Command-line front end: figure reproduction, measures for user states,
// the BLP witness, loss minimization and the oracle validation table.

#pragma once

#include <iosfwd>
#include <string_view>

#include "qflow/infoflow.hpp"

namespace qflow {

/// Contents of a state file: {"rho1": M, "rho2": M, "omega": M (optional)}.
struct StateFile {
  StatePair pair;
  DensityMatrix omega;
  bool omega_defaulted;
};

/// Throws std::invalid_argument with a message naming the offending key,
/// e.g. "rho1: trace ≠ 1 (deviation 0.1)".
StateFile parse_state_file(std::string_view text);

enum ExitCode : int { kExitOk = 0, kExitValidationFailed = 1, kExitUsage = 2 };

/// Runs the command line. Diagnostics go to `err` as a single line prefixed
/// "error:".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qflow
