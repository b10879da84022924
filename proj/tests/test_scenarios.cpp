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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qflow/scenarios.hpp"

using namespace qflow;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

double reparse(const std::string& cell) { return cell == "inf" ? kInfiniteEntropy : std::stod(cell); }

bool same_at_12_digits(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 5e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_SUITE("scenarios") {
  TEST_CASE("time grids") {
    const TimeGrid g{0.0, 3.0, 301};
    const auto t = g.times();
    REQUIRE(t.size() == 301);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 3.0);
    CHECK(g.step() == doctest::Approx(0.01).epsilon(1e-14));
    CHECK_THROWS_AS((TimeGrid{1.0, 1.0, 5}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}.validate()), std::invalid_argument);
  }

  TEST_CASE("measure columns round trip") {
    for (Measure m : all_measures()) CHECK(measure_from_column(measure_column(m)) == m);
    CHECK_THROWS_WITH_AS(measure_from_column("D_X"), doctest::Contains("D_X"), std::invalid_argument);
  }

  TEST_CASE("built-in scenarios") {
    const ScenarioConfig f1 = builtin("fig1");
    CHECK(trace_distance(f1.pair) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f1.profile.kind() == CouplingProfile::Kind::Semigroup);
    CHECK(f1.profile.convention() == SemigroupConvention::FigureConsistent);
    CHECK(f1.grid.t1 == 3.0);
    CHECK(f1.grid.steps == kDefaultGridPoints);

    const ScenarioConfig f2 = builtin("fig2");
    CHECK(trace_distance(f2.pair) == doctest::Approx(0.2071834936).epsilon(1e-9));

    const ScenarioConfig f3 = builtin("fig3");
    CHECK(f3.profile.kind() == CouplingProfile::Kind::Constant);
    CHECK(f3.grid.t1 == doctest::Approx(pi).epsilon(1e-15));
    const ModelState ms(f3.pair.rho1, f3.omega, f3.profile);
    for (double t : {0.2, 1.0, 2.5}) CHECK(std::abs(closed_form_g(ms, t, 2)) < 1e-16);

    CHECK_THROWS_WITH_AS(builtin("fig5"), doctest::Contains("fig5"), std::invalid_argument);
  }

  TEST_CASE("closed-form oracle values") {
    const OracleRecord a = oracle("fig1", 0.0);
    CHECK(a.d_e == 1.0);
    CHECK(a.d_s == 0.0);
    const OracleRecord b = oracle("fig3", pi / 4);
    CHECK(b.d_e == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(b.d_s == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    const OracleRecord c = oracle("fig4", pi / 2);
    CHECK(c.d_e_rounded == doctest::Approx(0.207).epsilon(1e-12));
    CHECK(std::abs(c.d_s_rounded) < 1e-15);
    CHECK(c.d_e == doctest::Approx(0.2071834936).epsilon(1e-9));
    CHECK(oracle("fig4", 0.6).d_s == doctest::Approx(0.065242736).epsilon(1e-8));
    CHECK_THROWS_AS(oracle("custom", 0.1), std::invalid_argument);
  }

  TEST_CASE("computed series match the exact oracles") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4"}) {
      const ScenarioConfig cfg = builtin(name);
      const MeasureSeries s = run(cfg);
      REQUIRE(s.oracle.size() == s.records.size());
      double exact = 0.0, rounded = 0.0;
      for (std::size_t k = 0; k < s.records.size(); ++k) {
        const MeasureRecord& r = s.records[k];
        exact = std::max({exact, std::abs(r.d_e - s.oracle[k].d_e), std::abs(r.d_s - s.oracle[k].d_s)});
        const OracleRecord o = oracle(name, r.t);
        rounded = std::max({rounded, std::abs(r.d_e - o.d_e_rounded), std::abs(r.d_s - o.d_s_rounded)});
      }
      INFO(name);
      CHECK(exact <= 1e-9);
      CHECK(rounded <= 5e-3);
    }
  }

  TEST_CASE("fig3 distance has period pi/2") {
    ScenarioConfig cfg = builtin("fig3");
    cfg.grid = TimeGrid{0.0, pi, 401};
    const MeasureSeries s = run(cfg);
    const std::size_t half = 200;
    for (std::size_t k = 0; k + half < s.records.size(); ++k)
      CHECK(std::abs(s.records[k].d_e - s.records[k + half].d_e) <= 1e-9);
  }

  TEST_CASE("fig1 distance difference stays negative") {
    const MeasureSeries s = run(builtin("fig1"));
    CHECK(s.records.front().i_t == 0.0);
    for (std::size_t k = 1; k < s.records.size(); ++k) CHECK(s.records[k].i_t < 0.0);
  }

  TEST_CASE("fig2 distance difference changes sign once") {
    const MeasureSeries s = run(builtin("fig2"));
    std::vector<std::size_t> flips;
    for (std::size_t k = 1; k + 1 < s.records.size(); ++k)
      if ((s.records[k].i_t < 0.0) != (s.records[k + 1].i_t < 0.0)) flips.push_back(k);
    REQUIRE(flips.size() == 1);
    const std::size_t k = flips.front();
    CHECK(s.records[k].i_t < 0.0);
    CHECK(s.records[k + 1].i_t > 0.0);
    CHECK(s.records[k].t == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(s.records[k + 1].t == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(s.records[1].i_t < 0.0);
  }

  TEST_CASE("constant-coupling loss returns to zero") {
    for (const char* name : {"fig3", "fig4"}) {
      ScenarioConfig cfg = builtin(name);
      cfg.grid = TimeGrid{0.0, pi, 3};
      const MeasureSeries s = run(cfg);
      CHECK(s.records[1].s_sum <= 1e-9);
      CHECK(s.records[2].s_sum <= 1e-9);
    }
  }

  TEST_CASE("semigroup loss accumulates") {
    for (const char* name : {"fig1", "fig2"}) {
      const MeasureSeries s = run(builtin(name));
      for (std::size_t k = 1; k < s.records.size(); ++k)
        CHECK(s.records[k].s_sum >= s.records[k - 1].s_sum - 1e-9);
    }
  }

  TEST_CASE("correlation bound holds on every scenario grid") {
    for (const char* name : {"fig1", "fig2", "fig3", "fig4"})
      for (const MeasureRecord& r : run(builtin(name)).records) CHECK(r.i_ext <= r.corr_bound + 1e-10);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(kInfiniteEntropy) == "inf");
    CHECK(format_number(0.1234567890123456) == "0.123456789012");
    CHECK(format_number(-2.5e-13) == "-2.5e-13");
  }

  TEST_CASE("CSV layout") {
    ScenarioConfig cfg = builtin("fig1");
    cfg.grid = TimeGrid{0.0, 1.0, 5};
    const MeasureSeries s = run(cfg);
    std::ostringstream out;
    emit_csv(s, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,D_E,D_S,I_ext,corr_bound,I_t,S1,S2,S_sum,oracle_D_E,oracle_D_S,err_D_E,err_D_S");
    const auto first = split(lines[1]);
    CHECK(first[0] == "0");
    CHECK(first[1] == "1");
    CHECK(first[2] == "0");
    CHECK(first[5] == "0");
    CHECK(out.str().back() == '\n');
    CHECK(out.str().find('\r') == std::string::npos);
  }

  TEST_CASE("CSV with an empty selection and without an oracle") {
    ScenarioConfig cfg = builtin("fig2");
    cfg.grid = TimeGrid{0.0, 1.0, 3};
    cfg.oracle.reset();
    std::ostringstream out;
    emit_csv(run(cfg), out, CsvOptions{{}, LogBase::Nats, false});
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "t");
    CHECK(lines[2] == "0.5");
  }

  TEST_CASE("CSV round trip at 12 significant digits") {
    const MeasureSeries s = run(builtin("fig4"));
    std::ostringstream out;
    emit_csv(s, out);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == s.records.size() + 1);
    for (std::size_t k = 0; k < s.records.size(); ++k) {
      const auto cells = split(lines[k + 1]);
      const MeasureRecord& r = s.records[k];
      const double expected[] = {r.t, r.d_e, r.d_s, r.i_ext, r.corr_bound, r.i_t, r.s1, r.s2, r.s_sum};
      for (std::size_t c = 0; c < 9; ++c) CHECK(same_at_12_digits(reparse(cells[c]), expected[c]));
      CHECK(format_number(reparse(cells[1])) == cells[1]);
    }
  }

  TEST_CASE("CSV renders the infinity sentinel and converts to bits") {
    MeasureSeries s;
    s.records.push_back({0.5, 0.1, 0.2, 0.3, 0.4, -0.5, kInfiniteEntropy, std::log(2.0), kInfiniteEntropy});
    std::ostringstream nats, bits;
    emit_csv(s, nats);
    emit_csv(s, bits, CsvOptions{all_measures(), LogBase::Bits, true});
    const auto n = split(lines_of(nats.str())[1]);
    CHECK(n[6] == "inf");
    CHECK(n[8] == "inf");
    const auto bl = lines_of(bits.str());
    CHECK(bl[0] == "# log_base: bits");
    const auto b = split(bl[2]);
    CHECK(b[7] == "1");
    CHECK(b[6] == "inf");
  }

  TEST_CASE("CSV metadata lines") {
    ScenarioConfig cfg = builtin("fig3");
    cfg.grid = TimeGrid{0.0, 1.0, 2};
    std::ostringstream out;
    emit_csv(run(cfg), out, CsvOptions{all_measures(), LogBase::Nats, true});
    const std::string text = out.str();
    CHECK(text.rfind("# scenario: fig3\n", 0) == 0);
    CHECK(text.find("# oracle: fig3\n") != std::string::npos);
  }

  TEST_CASE("scenario JSON") {
    const ScenarioConfig cfg = scenario_from_json(R"({
      "name": "mine",
      "rho1": [[1, 0], [0, 0]],
      "rho2": [[0, 0], [0, 1]],
      "profile": {"kind": "constant", "mu": 0.5},
      "grid": {"t1": 2.0, "steps": 5},
      "outputs": ["D_E", "I_t"]
    })");
    CHECK(cfg.name == "mine");
    CHECK(cfg.profile.kind() == CouplingProfile::Kind::Constant);
    CHECK(cfg.profile.rate() == 0.5);
    CHECK(cfg.outputs.size() == 2);
    CHECK_FALSE(cfg.oracle.has_value());
    CHECK(max_abs_diff(cfg.omega.mat(), plus_state().mat()) == 0.0);
    CHECK(run(cfg).records.size() == 5);

    const ScenarioConfig printed = scenario_from_json(R"({
      "rho1": [[1, 0], [0, 0]], "rho2": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]],
      "profile": {"kind": "semigroup", "gamma": 2, "convention": "printed"},
      "grid": {"t1": 1, "steps": 3}, "oracle": "fig1"})");
    CHECK(printed.profile.convention() == SemigroupConvention::AsPrinted);
    CHECK(printed.oracle == std::optional<std::string>("fig1"));
  }

  TEST_CASE("scenario JSON errors") {
    CHECK_THROWS_WITH_AS(scenario_from_json("{"), doctest::Contains("malformed JSON"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(R"({"rho1": [[1,0],[0,0]]})"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({
      "rho1": [[1.1, 0], [0, 0]], "rho2": [[0, 0], [0, 1]],
      "profile": {"kind": "constant"}, "grid": {"t1": 1, "steps": 3}})"),
                         doctest::Contains("rho1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({
      "rho1": [[1, 0], [0, 0]], "rho2": [[0, 0], [0, 1]],
      "profile": {"kind": "lindblad"}, "grid": {"t1": 1, "steps": 3}})"),
                         doctest::Contains("profile"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(R"({
      "rho1": [[1, 0], [0, 0]], "rho2": [[0, 0], [0, 1]],
      "profile": {"kind": "constant"}, "grid": {"t0": 0.5, "t1": 1, "steps": 3}})"),
                    std::invalid_argument);
  }
}
