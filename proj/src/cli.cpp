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

#include "qflow/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json_matrix.hpp"
#include "qflow/scenarios.hpp"
#include "qflow/validation.hpp"

namespace qflow {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::optional<double> gamma;
  std::optional<double> mu;
  std::string convention = "figure";
  std::optional<double> tmax;
  std::optional<std::size_t> steps;
  std::string states_path;
  std::string out_path;
  std::string log_base = "nats";
};

void add_common(CLI::App* cmd, Options& o, bool with_grid) {
  cmd->add_option("--gamma", o.gamma, "Semigroup rate gamma (> 0)");
  cmd->add_option("--mu", o.mu, "Constant coupling mu (>= 0)");
  cmd->add_option("--convention", o.convention, "Semigroup parametrization")
      ->check(CLI::IsMember({"printed", "figure"}));
  if (with_grid) {
    cmd->add_option("--tmax", o.tmax, "Grid end time");
    cmd->add_option("--steps", o.steps, "Number of grid points (>= 2)");
  }
  cmd->add_option("--out", o.out_path, "Output file (default stdout)");
  cmd->add_option("--log-base", o.log_base, "Entropy unit")
      ->check(CLI::IsMember({"nats", "bits"}));
}

SemigroupConvention convention_of(const Options& o) {
  return o.convention == "printed" ? SemigroupConvention::AsPrinted
                                   : SemigroupConvention::FigureConsistent;
}

LogBase log_base_of(const Options& o) {
  return o.log_base == "bits" ? LogBase::Bits : LogBase::Nats;
}

CouplingProfile profile_of(const Options& o) {
  if (o.gamma && o.mu) throw UsageError("--gamma and --mu are mutually exclusive");
  if (o.mu) return CouplingProfile::constant(*o.mu);
  return CouplingProfile::semigroup(o.gamma.value_or(1.0), convention_of(o));
}

TimeGrid grid_of(const Options& o, const CouplingProfile& p, TimeGrid base) {
  if (!o.tmax && !o.steps && p.kind() == CouplingProfile::Kind::Constant &&
      base.t1 != std::numbers::pi) {
    base.t1 = std::numbers::pi;
  }
  if (o.tmax) base.t1 = *o.tmax;
  if (o.steps) base.steps = *o.steps;
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return base;
}

TimeGrid default_grid(const CouplingProfile& p) {
  return TimeGrid{0.0, p.kind() == CouplingProfile::Kind::Constant ? std::numbers::pi : 3.0,
                  kDefaultGridPoints};
}

StateFile states_of(const Options& o, std::vector<std::pair<std::string, std::string>>& meta) {
  if (o.states_path.empty()) {
    meta.emplace_back("states", "built-in random pair, plus-state environment");
    return StateFile{random_pair(), plus_state(), true};
  }
  StateFile f = parse_state_file(read_file(o.states_path));
  meta.emplace_back("states", o.states_path);
  if (f.omega_defaulted) meta.emplace_back("omega", "plus state (default)");
  return f;
}

// Runs `body` against the --out file or the provided stream.
template <typename Body>
void with_output(const Options& o, std::ostream& fallback, Body&& body) {
  if (o.out_path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + o.out_path + "'");
  body(file);
}

ScenarioConfig figure_config(const std::optional<int>& number,
                             const std::string& config_path, const Options& o) {
  ScenarioConfig config = [&] {
    if (!config_path.empty()) return scenario_from_json(read_file(config_path));
    if (!number) throw UsageError("figure needs a number 1-4 or --config");
    return builtin("fig" + std::to_string(*number));
  }();
  const bool semigroup = config.profile.kind() == CouplingProfile::Kind::Semigroup;
  if (semigroup && o.mu) throw UsageError("--mu does not apply to a semigroup scenario");
  if (!semigroup && (o.gamma || o.convention != "figure")) {
    throw UsageError("--gamma/--convention apply only to semigroup scenarios");
  }
  if (semigroup) {
    config.profile = CouplingProfile::semigroup(o.gamma.value_or(config.profile.rate()),
                                                o.convention == "printed"
                                                    ? SemigroupConvention::AsPrinted
                                                    : config.profile.convention());
  } else if (o.mu) {
    config.profile = CouplingProfile::constant(*o.mu);
  }
  if (o.tmax) config.grid.t1 = *o.tmax;
  if (o.steps) config.grid.steps = *o.steps;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

int cmd_figure(const std::optional<int>& number, const std::string& config_path,
               const Options& o, std::ostream& out) {
  const ScenarioConfig config = figure_config(number, config_path, o);
  const MeasureSeries series = run(config);
  CsvOptions csv;
  csv.columns = config.outputs;
  csv.log_base = log_base_of(o);
  csv.metadata = true;
  with_output(o, out, [&](std::ostream& s) { emit_csv(series, s, csv); });
  return kExitOk;
}

int cmd_measures(const Options& o, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> meta;
  const StateFile states = states_of(o, meta);
  const CouplingProfile profile = profile_of(o);
  const TimeGrid grid = grid_of(o, profile, default_grid(profile));
  const PairConfig cfg{states.pair, states.omega, profile};
  MeasureSeries series = measure_series(cfg, grid.times());
  series.metadata.insert(series.metadata.begin(), meta.begin(), meta.end());
  CsvOptions csv;
  csv.log_base = log_base_of(o);
  csv.metadata = true;
  with_output(o, out, [&](std::ostream& s) { emit_csv(series, s, csv); });
  return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> meta;
  const StateFile states = states_of(o, meta);
  const CouplingProfile profile = profile_of(o);
  const TimeGrid grid = grid_of(o, profile, default_grid(profile));
  if (grid.steps < 3) throw UsageError("witness needs at least 3 grid points");
  const BlpReport report =
      blp_witness(PairConfig{states.pair, states.omega, profile}, grid.times());
  with_output(o, out, [&](std::ostream& s) {
    for (const auto& [k, v] : meta) s << "# " << k << ": " << v << '\n';
    s << "# profile: " << profile.describe() << '\n';
    s << "# grid: [" << format_number(grid.t0) << ", " << format_number(grid.t1) << "] x "
      << grid.steps << '\n';
    s << "# slope tolerance: " << format_number(kBlpTol) << '\n';
    s << "markovian: " << (report.markovian() ? "yes" : "no") << '\n';
    s << "max_slope: " << format_number(report.max_slope) << '\n';
    s << "violations: " << report.violations.size() << '\n';
    if (!report.violations.empty()) {
      s << std::left << std::setw(20) << "begin" << "end" << '\n';
      for (const auto& v : report.violations)
        s << std::setw(20) << format_number(v.begin) << format_number(v.end) << '\n';
    }
  });
  return kExitOk;
}

int cmd_minimize(const Options& o, double time, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> meta;
  const StateFile states = states_of(o, meta);
  const CouplingProfile profile = profile_of(o);
  if (!(time >= 0.0)) throw UsageError("--time must be non-negative");
  const LossMinimum best = minimize_loss(states.omega, time, profile);
  const double scale = log_base_of(o) == LogBase::Bits ? 1.0 / std::numbers::ln2 : 1.0;
  const auto bloch = bloch_vector(best.state);
  nlohmann::ordered_json j;
  j["profile"] = profile.describe();
  j["time"] = time;
  j["omega"] = detail::matrix_to_json(states.omega.mat());
  j["omega_defaulted"] = states.omega_defaulted;
  j["log_base"] = o.log_base;
  j["loss"] = is_infinite(best.loss) ? nlohmann::ordered_json("inf")
                                     : nlohmann::ordered_json(best.loss * scale);
  j["state"] = detail::matrix_to_json(best.state.mat());
  j["bloch"] = {bloch[0], bloch[1], bloch[2]};
  j["spherical"] = {{"r", best.r}, {"theta", best.theta}, {"phi", best.phi}};
  with_output(o, out, [&](std::ostream& s) { s << j.dump() << '\n'; });
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto checks = run_validation();
  bool all = true;
  with_output(o, out, [&](std::ostream& s) {
    for (const auto& c : checks) {
      all = all && c.passed;
      s << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(52) << c.name
        << " measured=" << format_number(c.measured)
        << (c.expects_mismatch ? " expected > " : " limit=") << format_number(c.threshold)
        << '\n';
    }
    s << (all ? "all checks passed" : "validation FAILED") << '\n';
  });
  return all ? kExitOk : kExitValidationFailed;
}

std::string one_line(std::string msg) {
  for (char& ch : msg)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return msg;
}

}  // namespace

StateFile parse_state_file(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("state file must be a JSON object");
  for (const char* key : {"rho1", "rho2"}) {
    if (!j.contains(key)) throw detail::KeyError(key, "missing");
  }
  StatePair pair(detail::state_from_json(j["rho1"], "rho1"),
                 detail::state_from_json(j["rho2"], "rho2"));
  if (j.contains("omega")) {
    return StateFile{std::move(pair), detail::state_from_json(j["omega"], "omega"), false};
  }
  return StateFile{std::move(pair), plus_state(), true};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information flow diagnostics for a two-qubit system-environment model"};
  app.require_subcommand(1);

  Options o;
  std::optional<int> figure_number;
  std::string config_path;
  double min_time = 1.0;

  auto* figure = app.add_subcommand("figure", "CSV of a built-in figure scenario with oracle columns");
  figure->add_option("number", figure_number, "Figure number")->check(CLI::Range(1, 4));
  figure->add_option("--config", config_path, "Scenario JSON instead of a built-in")
      ->excludes("number");
  add_common(figure, o, true);

  auto* measures = app.add_subcommand("measures", "CSV of all measures for user-supplied states");
  measures->add_option("--states", o.states_path, "State JSON file");
  add_common(measures, o, true);

  auto* witness = app.add_subcommand("witness", "BLP non-Markovianity witness report");
  witness->add_option("--states", o.states_path, "State JSON file");
  add_common(witness, o, true);

  auto* minimize = app.add_subcommand("minimize", "State minimizing the reduction loss (JSON)");
  minimize->add_option("--states", o.states_path, "State JSON file (only omega is used)");
  minimize->add_option("--time", min_time, "Evaluation time");
  add_common(minimize, o, false);

  auto* validate = app.add_subcommand("validate", "Run the oracle cross-check table");
  validate->add_option("--out", o.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (*figure) return cmd_figure(figure_number, config_path, o, out);
    if (*measures) return cmd_measures(o, out);
    if (*witness) return cmd_witness(o, out);
    if (*minimize) return cmd_minimize(o, min_time, out);
    if (*validate) return cmd_validate(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitValidationFailed;
  }
  return kExitUsage;
}

}  // namespace qflow
