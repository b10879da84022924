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

#include "qflow/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json_matrix.hpp"

namespace qflow {

void TimeGrid::validate() const {
  if (!(t1 > t0)) throw std::invalid_argument("time grid needs t1 > t0");
  if (steps < 2) throw std::invalid_argument("time grid needs at least two points");
}

double TimeGrid::step() const {
  return (t1 - t0) / static_cast<double>(steps - 1);
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> out(steps);
  const double h = step();
  for (std::size_t k = 0; k < steps; ++k) out[k] = t0 + h * static_cast<double>(k);
  out.back() = t1;
  return out;
}

std::vector<Measure> all_measures() {
  return {Measure::DE, Measure::DS, Measure::IExt, Measure::CorrBound,
          Measure::It, Measure::S1, Measure::S2,   Measure::SSum};
}

std::string_view measure_column(Measure m) {
  switch (m) {
    case Measure::DE: return "D_E";
    case Measure::DS: return "D_S";
    case Measure::IExt: return "I_ext";
    case Measure::CorrBound: return "corr_bound";
    case Measure::It: return "I_t";
    case Measure::S1: return "S1";
    case Measure::S2: return "S2";
    case Measure::SSum: return "S_sum";
  }
  return "";
}

Measure measure_from_column(std::string_view column) {
  for (Measure m : all_measures())
    if (measure_column(m) == column) return m;
  throw std::invalid_argument("unknown measure column '" + std::string(column) + "'");
}

void ScenarioConfig::validate() const {
  grid.validate();
  if (grid.t0 != 0.0) throw std::invalid_argument("scenario grids start at t0 = 0");
  if (pair.rho1.dim() != 2 || omega.dim() != 2) {
    throw std::invalid_argument("scenario states must be qubits");
  }
}

StatePair orthogonal_pair() {
  const double s = std::sin(std::numbers::pi / 8.0);
  const double c = std::cos(std::numbers::pi / 8.0);
  return StatePair(DensityMatrix::from_matrix({{s * s, s * c}, {s * c, c * c}}),
                   DensityMatrix::from_matrix({{c * c, -s * c}, {-s * c, s * s}}));
}

StatePair random_pair() {
  return StatePair(
      DensityMatrix::from_matrix({{0.655, cplx{0.205, -0.225}},
                                  {cplx{0.205, 0.225}, 0.345}}),
      DensityMatrix::from_matrix({{0.73, cplx{0.275, -0.045}},
                                  {cplx{0.275, 0.045}, 0.27}}));
}

ScenarioConfig builtin(std::string_view name) {
  const bool semigroup = name == "fig1" || name == "fig2";
  const bool constant = name == "fig3" || name == "fig4";
  if (!semigroup && !constant) {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  }
  const bool orthogonal = name == "fig1" || name == "fig3";
  return ScenarioConfig{
      std::string(name),
      orthogonal ? orthogonal_pair() : random_pair(),
      plus_state(),
      semigroup ? CouplingProfile::semigroup(1.0) : CouplingProfile::constant(1.0),
      TimeGrid{0.0, semigroup ? 3.0 : std::numbers::pi, kDefaultGridPoints},
      all_measures(),
      std::string(name)};
}

namespace {

// Bloch-vector differences of the random pair, read off the matrix entries.
constexpr double kRandomDx = 2.0 * (0.205 - 0.275);
constexpr double kRandomDy = -2.0 * (-0.225 - (-0.045));
constexpr double kRandomDz = (0.655 - 0.345) - (0.73 - 0.27);

struct RandomPairConstants {
  double d0;       // initial trace distance
  double x_share;  // dx^2 / |d|^2, the part of the distance dephasing spares
  double ds_scale; // |dx| / 2
};

RandomPairConstants random_pair_constants() {
  const double norm2 = kRandomDx * kRandomDx + kRandomDy * kRandomDy +
                       kRandomDz * kRandomDz;
  return {0.5 * std::sqrt(norm2), kRandomDx * kRandomDx / norm2,
          0.5 * std::abs(kRandomDx)};
}

}  // namespace

OracleRecord oracle(std::string_view name, double t, double rate) {
  if (name == "fig1" || name == "fig2") {
    const double decay = std::exp(-4.0 * rate * t);
    if (name == "fig1") {
      const double de = std::sqrt((1.0 + decay) / 2.0);
      const double ds = std::sqrt((1.0 - decay) / 2.0);
      return {de, ds, de, ds};
    }
    const auto k = random_pair_constants();
    return {k.d0 * std::sqrt(k.x_share + (1.0 - k.x_share) * decay),
            k.ds_scale * std::sqrt(1.0 - decay),
            0.207 * std::sqrt(0.114 + 0.886 * decay),
            0.07 * std::sqrt(1.0 - decay)};
  }
  if (name == "fig3" || name == "fig4") {
    const double c4 = std::cos(4.0 * rate * t);
    if (name == "fig3") {
      const double de = 0.5 * std::sqrt(3.0 + c4);
      const double ds = 0.5 * std::sqrt(1.0 - c4);
      return {de, ds, de, ds};
    }
    const auto k = random_pair_constants();
    const double spared = k.x_share + 0.5 * (1.0 - k.x_share);
    const double s2 = std::abs(std::sin(2.0 * rate * t));
    return {k.d0 * std::sqrt(spared + 0.5 * (1.0 - k.x_share) * c4),
            k.ds_scale * s2, 0.207 * std::sqrt(0.557 + 0.443 * c4), 0.07 * s2};
  }
  throw std::invalid_argument("no closed form for scenario '" + std::string(name) + "'");
}

MeasureSeries run(const ScenarioConfig& config) {
  config.validate();
  const std::vector<double> times = config.grid.times();
  PairConfig cfg{config.pair, config.omega, config.profile};
  MeasureSeries series = measure_series(cfg, times);
  series.metadata.insert(series.metadata.begin(), {"scenario", config.name});
  if (config.oracle) {
    series.oracle.reserve(times.size());
    for (double t : times) {
      const OracleRecord o = oracle(*config.oracle, t, config.profile.rate());
      series.oracle.push_back({o.d_e, o.d_s});
    }
    series.metadata.emplace_back("oracle", *config.oracle);
  }
  return series;
}

std::string format_number(double value) {
  if (is_infinite(value)) return "inf";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

double column_value(const MeasureRecord& r, Measure m, double entropy_scale) {
  switch (m) {
    case Measure::DE: return r.d_e;
    case Measure::DS: return r.d_s;
    case Measure::IExt: return r.i_ext;
    case Measure::CorrBound: return r.corr_bound;
    case Measure::It: return r.i_t;
    case Measure::S1: return r.s1 * entropy_scale;
    case Measure::S2: return r.s2 * entropy_scale;
    case Measure::SSum: return r.s_sum * entropy_scale;
  }
  return 0.0;
}

}  // namespace

void emit_csv(const MeasureSeries& series, std::ostream& out,
              const CsvOptions& options) {
  const double entropy_scale =
      options.log_base == LogBase::Bits ? 1.0 / std::numbers::ln2 : 1.0;
  const bool with_oracle = !series.oracle.empty();
  if (with_oracle && series.oracle.size() != series.records.size()) {
    throw std::invalid_argument("oracle column length does not match the series");
  }
  if (options.metadata) {
    for (const auto& [key, value] : series.metadata)
      out << "# " << key << ": " << value << '\n';
    out << "# log_base: " << (options.log_base == LogBase::Bits ? "bits" : "nats")
        << '\n';
  }
  out << 't';
  for (Measure m : options.columns) out << ',' << measure_column(m);
  if (with_oracle) out << ",oracle_D_E,oracle_D_S,err_D_E,err_D_S";
  out << '\n';
  for (std::size_t k = 0; k < series.records.size(); ++k) {
    const MeasureRecord& r = series.records[k];
    out << format_number(r.t);
    for (Measure m : options.columns)
      out << ',' << format_number(column_value(r, m, entropy_scale));
    if (with_oracle) {
      const OraclePoint& o = series.oracle[k];
      out << ',' << format_number(o.d_e) << ',' << format_number(o.d_s) << ','
          << format_number(std::abs(r.d_e - o.d_e)) << ','
          << format_number(std::abs(r.d_s - o.d_s));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing CSV output");
}

namespace {

CouplingProfile profile_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "semigroup") {
    const std::string conv = j.value("convention", std::string("figure"));
    if (conv != "figure" && conv != "printed") {
      throw detail::KeyError("profile", "convention must be 'figure' or 'printed'");
    }
    return CouplingProfile::semigroup(
        j.value("gamma", 1.0), conv == "printed" ? SemigroupConvention::AsPrinted
                                                 : SemigroupConvention::FigureConsistent);
  }
  if (kind == "constant") return CouplingProfile::constant(j.value("mu", 1.0));
  throw detail::KeyError("profile", "kind must be 'semigroup' or 'constant'");
}

}  // namespace

ScenarioConfig scenario_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  try {
    StatePair pair(detail::state_from_json(j.at("rho1"), "rho1"),
                   detail::state_from_json(j.at("rho2"), "rho2"));
    DensityMatrix omega =
        j.contains("omega") ? detail::state_from_json(j["omega"], "omega") : plus_state();
    const auto& g = j.at("grid");
    TimeGrid grid{g.value("t0", 0.0), g.at("t1").get<double>(),
                  g.at("steps").get<std::size_t>()};
    std::vector<Measure> outputs = all_measures();
    if (j.contains("outputs")) {
      outputs.clear();
      for (const auto& col : j["outputs"]) outputs.push_back(measure_from_column(col.get<std::string>()));
    }
    std::optional<std::string> oracle_name;
    if (j.contains("oracle")) {
      oracle_name = j["oracle"].get<std::string>();
      (void)oracle(*oracle_name, 0.0);
    }
    ScenarioConfig config{j.value("name", std::string("custom")),
                          std::move(pair),
                          std::move(omega),
                          profile_from_json(j.at("profile")),
                          grid,
                          std::move(outputs),
                          std::move(oracle_name)};
    config.validate();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid scenario: ") + e.what());
  }
}

}  // namespace qflow
