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

#include "qflow/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qflow/scenarios.hpp"

namespace qflow {

namespace {

constexpr double pi = std::numbers::pi;

PairConfig pair_config(const ScenarioConfig& s) {
  return PairConfig{s.pair, s.omega, s.profile};
}

CheckResult at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured <= threshold, measured, threshold, false};
}

CheckResult mismatch(std::string name, double measured, double threshold) {
  return {std::move(name), measured > threshold, measured, threshold, true};
}

double max_curve_error(const ScenarioConfig& s, bool rounded) {
  const PairConfig cfg = pair_config(s);
  double err = 0.0;
  for (double t : s.grid.times()) {
    const OracleRecord o = oracle(*s.oracle, t, s.profile.rate());
    err = std::max(err, std::abs(distance_at(cfg, t, Subsystem::System) -
                                 (rounded ? o.d_e_rounded : o.d_e)));
    err = std::max(err, std::abs(distance_at(cfg, t, Subsystem::Environment) -
                                 (rounded ? o.d_s_rounded : o.d_s)));
  }
  return err;
}

double semigroup_composition_error(const CouplingProfile& p) {
  const DensityMatrix omega = plus_state();
  double err = 0.0;
  for (int i = 1; i <= 10; ++i) {
    for (int k = 1; k <= 10; ++k) {
      const double t = 0.1 * i;
      const double s = 0.1 * k;
      const Channel outer = system_channel(omega, p, t);
      const Channel inner = system_channel(omega, p, s);
      const Channel composed{2, 2, [&](const ComplexMatrix& x) { return outer(inner(x)); }};
      err = std::max(err, distance_frobenius(choi_of(system_channel(omega, p, t + s)),
                                             choi_of(composed)));
    }
  }
  return err;
}

double mutual_information(const ModelState& ms, double t) {
  const DensityMatrix joint = joint_state(ms, t);
  const auto marg = [&](Subsystem traced) {
    return DensityMatrix::from_matrix(partial_trace(joint.mat(), {2, 2}, traced));
  };
  const DensityMatrix initial =
      DensityMatrix::from_matrix(kron(ms.rho0.mat(), ms.omega0.mat()));
  return von_neumann_entropy(marg(Subsystem::Environment)) +
         von_neumann_entropy(marg(Subsystem::System)) - von_neumann_entropy(initial);
}

}  // namespace

std::vector<CheckResult> run_validation() {
  std::vector<CheckResult> out;
  const std::vector<ScenarioConfig> figs{builtin("fig1"), builtin("fig2"),
                                         builtin("fig3"), builtin("fig4")};

  double reduction_err = 0.0;
  double bound_violation = -1.0;
  double cross_err = 0.0;
  double mi_err = 0.0;
  double cptp_min_eig = 0.0;
  double cptp_tp_dev = 0.0;
  for (const auto& s : figs) {
    const PairConfig cfg = pair_config(s);
    for (double t : s.grid.times()) {
      for (int which : {1, 2}) {
        const ModelState ms = cfg.model(which);
        for (Subsystem side : {Subsystem::System, Subsystem::Environment}) {
          reduction_err = std::max(
              reduction_err,
              trace_norm(closed_form_map(ms, t, side).mat() - reduce(ms, t, side).mat()));
        }
        mi_err = std::max(mi_err, std::abs(s_u_lambda(ms, t) - mutual_information(ms, t)));
      }
      const IExtPaths paths = i_ext_paths(cfg, t);
      cross_err = std::max(cross_err, std::abs(paths.direct - paths.shortcut));
      bound_violation = std::max(bound_violation, paths.direct - corr_bound(cfg, t));
    }
    for (int k = 0; k < 20; ++k) {
      const double t = s.grid.t1 * (k + 0.5) / 20.0;
      for (const Channel& c : {system_channel(s.omega, s.profile, t),
                               environment_channel(s.pair.rho1, s.profile, t),
                               environment_channel(s.pair.rho2, s.profile, t)}) {
        const CptpReport r = is_cptp(choi_of(c), {2, 2});
        cptp_min_eig = std::min(cptp_min_eig, r.min_eigenvalue);
        cptp_tp_dev = std::max(cptp_tp_dev, r.tp_deviation);
      }
    }
  }
  out.push_back(at_most("closed-form map = partial trace (trace norm)", reduction_err, 1e-10));
  out.push_back(at_most("fig1 distance curves", max_curve_error(figs[0], false), 1e-9));
  out.push_back(at_most("fig2 distance curves (exact prefactors)", max_curve_error(figs[1], false), 1e-9));
  out.push_back(at_most("fig2 distance curves (rounded prefactors)", max_curve_error(figs[1], true), 5e-3));
  out.push_back(at_most("fig3 distance curves", max_curve_error(figs[2], false), 1e-9));
  out.push_back(at_most("fig4 distance curves (exact prefactors)", max_curve_error(figs[3], false), 1e-9));
  out.push_back(at_most("fig4 distance curves (rounded prefactors)", max_curve_error(figs[3], true), 5e-3));

  {
    const MeasureSeries s1 = run(figs[0]);
    double worst = -1.0;
    for (std::size_t k = 1; k < s1.records.size(); ++k) worst = std::max(worst, s1.records[k].i_t);
    out.push_back(at_most("fig1 trace-distance difference < 0 for t > 0", worst, 0.0));
    const MeasureSeries s3 = run(figs[2]);
    worst = -1.0;
    for (std::size_t k = 1; k < s3.records.size(); ++k) worst = std::max(worst, s3.records[k].i_t);
    out.push_back(at_most("fig3 trace-distance difference <= 0", worst, 1e-12));
    const MeasureSeries s2 = run(figs[1]);
    int changes = 0;
    for (std::size_t k = 2; k < s2.records.size(); ++k)
      if ((s2.records[k - 1].i_t < 0.0) != (s2.records[k].i_t < 0.0)) ++changes;
    const bool ends_positive = s2.records.back().i_t > 0.0;
    out.push_back(at_most("fig2 single sign change (count - 1)",
                          ends_positive ? std::abs(changes - 1.0) : 1.0, 0.0));
    double drop = 0.0;
    for (std::size_t k = 1; k < s1.records.size(); ++k)
      drop = std::max(drop, s1.records[k - 1].s_sum - s1.records[k].s_sum);
    out.push_back(at_most("fig1 entropy sum non-decreasing", drop, 1e-9));
  }

  for (std::size_t f : {0u, 1u}) {
    const BlpReport r = blp_witness(pair_config(figs[f]), figs[f].grid.times());
    out.push_back(at_most(figs[f].name + " BLP max slope", r.max_slope, kBlpTol));
  }
  {
    const TimeGrid grid{0.0, pi, 628};
    const BlpReport r = blp_witness(pair_config(figs[3]), grid.times());
    const double h = grid.step();
    const bool inside = std::any_of(r.violations.begin(), r.violations.end(), [&](const auto& v) {
      return v.begin >= pi / 4 - h && v.end <= pi / 2 + h;
    });
    out.push_back({"fig4 BLP violation inside (pi/4, pi/2)", inside, r.max_slope, kBlpTol, false});
  }

  out.push_back(at_most("external information <= correlation bound", bound_violation, 1e-10));
  out.push_back(at_most("external information path cross-check", cross_err, kIExtCrossTol));
  out.push_back(at_most("S_U = mutual information", mi_err, 1e-9));
  {
    double zero_err = 0.0;
    for (const auto& s : {figs[2], figs[3]})
      for (double t : {0.0, pi / 2, pi})
        zero_err = std::max(zero_err, std::abs(entropy_sum(pair_config(s), t)));
    out.push_back(at_most("S_U vanishes at t = 0 and F = pi/2", zero_err, 1e-9));
  }

  {
    const TimeGrid grid{0.0, pi, 3142};
    const auto times = grid.times();
    const ScenarioConfig& s = figs[3];
    const double worst = [&] {
      double e = 0.0;
      for (const DensityMatrix& rho0 : {s.pair.rho1, s.pair.rho2}) {
        const auto path = volterra_solve(1.0, rho0, times);
        const ModelState ms(rho0, s.omega, s.profile);
        for (std::size_t k = 0; k < times.size(); ++k)
          e = std::max(e, trace_norm(path[k].mat() -
                                     closed_form_map(ms, times[k], Subsystem::System).mat()));
      }
      return e;
    }();
    out.push_back(at_most("Volterra solution vs closed form (h ~ 1e-3)", worst, 1e-4));
  }

  out.push_back(at_most("Choi min eigenvalue (negated)", -cptp_min_eig, 1e-10));
  out.push_back(at_most("Choi trace-preservation deviation", cptp_tp_dev, 1e-10));

  ScenarioConfig printed = figs[0];
  printed.profile = CouplingProfile::semigroup(1.0, SemigroupConvention::AsPrinted);
  out.push_back(mismatch("printed-f parametrization misses fig1 curves",
                         max_curve_error(printed, false), 1e-9));
  out.push_back(mismatch("printed-f parametrization breaks semigroup law",
                         semigroup_composition_error(printed.profile), 1e-10));
  out.push_back(at_most("figure parametrization obeys semigroup law",
                        semigroup_composition_error(figs[0].profile), 1e-10));
  return out;
}

}  // namespace qflow
