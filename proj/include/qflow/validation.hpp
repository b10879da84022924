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

// Oracle cross-checks behind the `validate` command.

#pragma once

#include <string>
#include <vector>

namespace qflow {

struct CheckResult {
  std::string name;
  bool passed;
  double measured;
  double threshold;
  /// True for checks that demonstrate a known inconsistency: they pass when
  /// the measured error exceeds the threshold.
  bool expects_mismatch = false;
};

std::vector<CheckResult> run_validation();

}  // namespace qflow
