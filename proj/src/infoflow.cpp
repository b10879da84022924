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

#include "qflow/infoflow.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qflow {

StatePair::StatePair(DensityMatrix first, DensityMatrix second)
    : rho1(std::move(first)), rho2(std::move(second)) {
  if (rho1.dim() != rho2.dim()) {
    throw std::invalid_argument("state pair has mismatched dimensions");
  }
}

ModelState PairConfig::model(int which) const {
  return ModelState(which == 1 ? pair.rho1 : pair.rho2, omega, profile);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * trace_norm(a.mat() - b.mat());
}

double trace_distance(const StatePair& p) { return trace_distance(p.rho1, p.rho2); }

namespace {

DensityMatrix marginal(const DensityMatrix& joint, Subsystem keep) {
  const Subsystem traced =
      keep == Subsystem::System ? Subsystem::Environment : Subsystem::System;
  return DensityMatrix::from_matrix(partial_trace(joint.mat(), {2, 2}, traced));
}

// Everything the measures need at one time, computed from the two joint
// states.
struct Snapshot {
  DensityMatrix joint1;
  DensityMatrix joint2;
  DensityMatrix sys1;
  DensityMatrix sys2;
  DensityMatrix env1;
  DensityMatrix env2;
};

Snapshot snapshot(const PairConfig& cfg, double t) {
  DensityMatrix j1 = joint_state(cfg.model(1), t);
  DensityMatrix j2 = joint_state(cfg.model(2), t);
  DensityMatrix s1 = marginal(j1, Subsystem::System);
  DensityMatrix s2 = marginal(j2, Subsystem::System);
  DensityMatrix e1 = marginal(j1, Subsystem::Environment);
  DensityMatrix e2 = marginal(j2, Subsystem::Environment);
  return Snapshot{std::move(j1), std::move(j2), std::move(s1),
                  std::move(s2), std::move(e1), std::move(e2)};
}

DensityMatrix product_of_marginals(const DensityMatrix& sys,
                                   const DensityMatrix& env) {
  return DensityMatrix::from_matrix(kron(sys.mat(), env.mat()));
}

IExtPaths i_ext_from(const Snapshot& s, double d0) {
  const double d_e = trace_distance(s.sys1, s.sys2);
  return IExtPaths{trace_distance(s.joint1, s.joint2) - d_e, d0 - d_e};
}

double checked_i_ext(const IExtPaths& paths, double t) {
  if (std::abs(paths.direct - paths.shortcut) > kIExtCrossTol) {
    std::ostringstream msg;
    msg << "external information paths disagree at t=" << t << ": "
        << paths.direct << " vs " << paths.shortcut;
    throw std::logic_error(msg.str());
  }
  return paths.direct;
}

double corr_bound_from(const Snapshot& s) {
  return trace_distance(s.joint1, product_of_marginals(s.sys1, s.env1)) +
         trace_distance(s.joint2, product_of_marginals(s.sys2, s.env2)) +
         trace_distance(s.env1, s.env2);
}

double s_u_from(const DensityMatrix& joint, const DensityMatrix& sys,
                const DensityMatrix& env, double support_tol) {
  return relative_entropy(joint, product_of_marginals(sys, env), support_tol);
}

double absorbing_mean(double a, double b) {
  if (is_infinite(a) || is_infinite(b)) return kInfiniteEntropy;
  return 0.5 * (a + b);
}

}  // namespace

double distance_at(const PairConfig& cfg, double t, Subsystem keep) {
  return trace_distance(reduce(cfg.model(1), t, keep),
                        reduce(cfg.model(2), t, keep));
}

IExtPaths i_ext_paths(const PairConfig& cfg, double t) {
  return i_ext_from(snapshot(cfg, t), trace_distance(cfg.pair));
}

double i_ext(const PairConfig& cfg, double t) {
  return checked_i_ext(i_ext_paths(cfg, t), t);
}

double corr_bound(const PairConfig& cfg, double t) {
  return corr_bound_from(snapshot(cfg, t));
}

double tdd(const PairConfig& cfg, double t) {
  return trace_distance(cfg.pair) - (distance_at(cfg, t, Subsystem::System) +
                                     distance_at(cfg, t, Subsystem::Environment));
}

BlpReport blp_witness(const PairConfig& cfg, std::span<const double> times,
                      double tol) {
  const std::size_t n = times.size();
  if (n < 3) throw std::invalid_argument("BLP witness needs at least three grid points");
  for (std::size_t k = 1; k < n; ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("BLP witness grid must be strictly increasing");
    }
  }

  BlpReport report;
  report.times.assign(times.begin(), times.end());
  report.distance.reserve(n);
  for (double t : times) report.distance.push_back(distance_at(cfg, t, Subsystem::System));

  const auto& d = report.distance;
  report.derivative.resize(n);
  report.derivative[0] = (d[1] - d[0]) / (times[1] - times[0]);
  report.derivative[n - 1] = (d[n - 1] - d[n - 2]) / (times[n - 1] - times[n - 2]);
  for (std::size_t k = 1; k + 1 < n; ++k)
    report.derivative[k] = (d[k + 1] - d[k - 1]) / (times[k + 1] - times[k - 1]);

  report.max_slope = *std::max_element(report.derivative.begin(), report.derivative.end());
  for (std::size_t k = 0; k < n;) {
    if (report.derivative[k] <= tol) {
      ++k;
      continue;
    }
    const std::size_t first = k;
    while (k < n && report.derivative[k] > tol) ++k;
    report.violations.push_back({times[first], times[k - 1]});
  }
  return report;
}

double s_u_lambda(const ModelState& ms, double t, double support_tol) {
  const DensityMatrix joint = joint_state(ms, t);
  return s_u_from(joint, marginal(joint, Subsystem::System),
                  marginal(joint, Subsystem::Environment), support_tol);
}

double entropy_sum(const PairConfig& cfg, double t) {
  return absorbing_mean(s_u_lambda(cfg.model(1), t), s_u_lambda(cfg.model(2), t));
}

namespace {

struct BlochPoint {
  double r;
  double theta;
  double phi;
};

DensityMatrix state_at(const BlochPoint& p) {
  const double st = std::sin(p.theta);
  return qubit_from_bloch(p.r * st * std::cos(p.phi), p.r * st * std::sin(p.phi),
                          p.r * std::cos(p.theta));
}

double grid_value(std::size_t k, std::size_t count, double span) {
  return count == 1 ? 0.0 : span * static_cast<double>(k) / static_cast<double>(count - 1);
}

}  // namespace

LossMinimum minimize_loss(const DensityMatrix& omega, double t,
                          const CouplingProfile& profile,
                          const SearchConfig& search) {
  if (search.radial_points == 0 || search.polar_points == 0 ||
      search.azimuthal_points == 0) {
    throw std::invalid_argument("empty search grid");
  }
  constexpr double pi = std::numbers::pi;
  const auto loss = [&](const BlochPoint& p) {
    return s_u_lambda(ModelState(state_at(p), omega, profile), t);
  };

  BlochPoint best{0.0, 0.0, 0.0};
  double best_loss = kInfiniteEntropy;
  bool have_best = false;
  for (std::size_t i = 0; i < search.radial_points; ++i) {
    for (std::size_t j = 0; j < search.polar_points; ++j) {
      for (std::size_t k = 0; k < search.azimuthal_points; ++k) {
        const BlochPoint p{
            grid_value(i, search.radial_points, 1.0),
            grid_value(j, search.polar_points, pi),
            2.0 * pi * static_cast<double>(k) /
                static_cast<double>(search.azimuthal_points)};
        const double value = loss(p);
        if (!have_best || value < best_loss) {
          best = p;
          best_loss = value;
          have_best = true;
        }
      }
    }
  }

  double dr = search.radial_points > 1 ? 1.0 / static_cast<double>(search.radial_points - 1) : 0.5;
  double dtheta = search.polar_points > 1 ? pi / static_cast<double>(search.polar_points - 1) : pi / 2.0;
  double dphi = 2.0 * pi / static_cast<double>(search.azimuthal_points);
  for (std::size_t pass = 0; pass < search.refine_passes; ++pass) {
    dr *= 0.5;
    dtheta *= 0.5;
    dphi *= 0.5;
    for (std::size_t sweep = 0; sweep < search.sweeps_per_pass; ++sweep) {
      bool improved = false;
      for (int coord = 0; coord < 3; ++coord) {
        for (double dir : {-1.0, 1.0}) {
          BlochPoint c = best;
          switch (coord) {
            case 0:
              c.r = std::clamp(c.r + dir * dr, 0.0, 1.0);
              break;
            case 1:
              c.theta = std::clamp(c.theta + dir * dtheta, 0.0, pi);
              break;
            default:
              c.phi = std::fmod(c.phi + dir * dphi + 2.0 * pi, 2.0 * pi);
              break;
          }
          const double value = loss(c);
          if (value < best_loss) {
            best = c;
            best_loss = value;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
  return LossMinimum{state_at(best), best_loss, best.r, best.theta, best.phi};
}

MeasureSeries measure_series(const PairConfig& cfg, std::span<const double> times) {
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("measure grid must be strictly increasing");
    }
  }
  const double d0 = trace_distance(cfg.pair);
  MeasureSeries series;
  series.records.reserve(times.size());
  for (double t : times) {
    const Snapshot s = snapshot(cfg, t);
    MeasureRecord r{};
    r.t = t;
    r.d_e = trace_distance(s.sys1, s.sys2);
    r.d_s = trace_distance(s.env1, s.env2);
    r.i_ext = checked_i_ext(i_ext_from(s, d0), t);
    r.corr_bound = corr_bound_from(s);
    r.i_t = d0 - (r.d_e + r.d_s);
    r.s1 = s_u_from(s.joint1, s.sys1, s.env1, kDefaultSupportTol);
    r.s2 = s_u_from(s.joint2, s.sys2, s.env2, kDefaultSupportTol);
    r.s_sum = absorbing_mean(r.s1, r.s2);
    for (double d : {r.d_e, r.d_s}) {
      if (d < -1e-10 || d > 1.0 + 1e-10) {
        throw std::logic_error("trace distance left [0, 1]");
      }
    }
    if (r.i_ext < -1e-10) throw std::logic_error("negative external information");
    series.records.push_back(r);
  }
  series.metadata.emplace_back("profile", cfg.profile.describe());
  series.metadata.emplace_back("initial_distance", [d0] {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", d0);
    return std::string(buf);
  }());
  return series;
}

}  // namespace qflow
