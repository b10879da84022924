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

// Reproducible experiment configurations: the four built-in figure
// scenarios, their closed-form distance curves, the series driver and CSV
// emission.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/infoflow.hpp"

namespace qflow {

/// Uniform grid of `steps` points from t0 to t1 inclusive.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t steps = 2;

  /// Throws std::invalid_argument unless t1 > t0 and steps >= 2.
  void validate() const;
  double step() const;
  std::vector<double> times() const;
};

enum class Measure { DE, DS, IExt, CorrBound, It, S1, S2, SSum };

std::vector<Measure> all_measures();
std::string_view measure_column(Measure m);
/// Inverse of measure_column. Throws std::invalid_argument.
Measure measure_from_column(std::string_view column);

enum class LogBase { Nats, Bits };

struct ScenarioConfig {
  std::string name;
  StatePair pair;
  DensityMatrix omega;
  CouplingProfile profile;
  TimeGrid grid;
  std::vector<Measure> outputs = all_measures();
  /// Built-in scenario whose closed-form curves apply, if any.
  std::optional<std::string> oracle;

  /// Checks t0 = 0, the grid, and qubit dimensions.
  void validate() const;
};

/// The orthogonal pair of projectors at angles +-pi/8 around the x-z plane.
StatePair orthogonal_pair();
/// The fixed "random" pair with entries 0.655 / 0.205-0.225i and
/// 0.73 / 0.275-0.045i.
StatePair random_pair();

inline constexpr std::size_t kDefaultGridPoints = 301;

/// fig1..fig4. Throws std::invalid_argument for anything else.
ScenarioConfig builtin(std::string_view name);

struct OracleRecord {
  /// Closed forms with prefactors computed exactly from the state entries.
  double d_e;
  double d_s;
  /// Closed forms with the two/three-digit rounded prefactors.
  double d_e_rounded;
  double d_s_rounded;
};

/// Closed-form D^(E)_t and D^(S)_t for a built-in scenario. `rate` is gamma
/// (fig1, fig2) or mu (fig3, fig4); the published curves use rate = 1.
OracleRecord oracle(std::string_view name, double t, double rate = 1.0);

/// Evaluates the configuration on its grid; attaches oracle values when the
/// configuration names one.
MeasureSeries run(const ScenarioConfig& config);

struct CsvOptions {
  std::vector<Measure> columns = all_measures();
  LogBase log_base = LogBase::Nats;
  /// Leading "# key: value" lines from the series metadata.
  bool metadata = false;
};

/// 12 significant digits, "inf" for the infinite entropy sentinel, never "-0".
std::string format_number(double value);

void emit_csv(const MeasureSeries& series, std::ostream& out,
              const CsvOptions& options = {});

/// Parses a scenario description (JSON). Schema:
///   {"name": str, "rho1": M, "rho2": M, "omega": M (optional),
///    "profile": {"kind": "semigroup", "gamma": x, "convention": "figure"|"printed"}
///             | {"kind": "constant", "mu": x},
///    "grid": {"t0": 0, "t1": x, "steps": n},
///    "outputs": [column names] (optional), "oracle": "figN" (optional)}
/// where M is a 2x2 array of [re, im] pairs.
ScenarioConfig scenario_from_json(std::string_view text);

}  // namespace qflow
