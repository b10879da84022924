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

// Information measures on the reduced dynamics: trace distances of both
// marginals, the external information and its correlation bound, the
// trace-distance difference, the BLP witness and the relative-entropy loss
// of the reduction.

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qflow/model.hpp"

namespace qflow {

struct StatePair {
  StatePair(DensityMatrix first, DensityMatrix second);

  DensityMatrix rho1;
  DensityMatrix rho2;
};

/// Two system states evolved against a shared environment and coupling.
struct PairConfig {
  StatePair pair;
  DensityMatrix omega;
  CouplingProfile profile;

  /// Model state for rho1 (which = 1) or rho2 (which = 2).
  ModelState model(int which) const;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const StatePair& p);

/// D^(E)_t for keep = System, D^(S)_t for keep = Environment.
double distance_at(const PairConfig& cfg, double t, Subsystem keep);

struct IExtPaths {
  /// Trace distance of the two joint states minus D^(E)_t.
  double direct;
  /// D_0 - D^(E)_t, using unitary invariance of the trace norm.
  double shortcut;
};

inline constexpr double kIExtCrossTol = 1e-12;

IExtPaths i_ext_paths(const PairConfig& cfg, double t);

/// External information. Throws std::logic_error when the two evaluation
/// paths disagree by more than kIExtCrossTol.
double i_ext(const PairConfig& cfg, double t);

/// Correlation bound on the external information: the trace distance of each
/// joint state to the product of its marginals, plus D^(S)_t.
double corr_bound(const PairConfig& cfg, double t);

/// Trace-distance difference D_0 - (D^(E)_t + D^(S)_t).
double tdd(const PairConfig& cfg, double t);

struct ViolationInterval {
  double begin;
  double end;
};

struct BlpReport {
  std::vector<double> times;
  std::vector<double> distance;
  std::vector<double> derivative;
  std::vector<ViolationInterval> violations;
  double max_slope;

  bool markovian() const { return violations.empty(); }
};

inline constexpr double kBlpTol = 1e-8;

/// Finite-difference check of d/dt D^(E)_t <= 0 on a uniform grid of at
/// least three points. Central differences inside, one-sided at the ends.
/// Maximal runs of grid points with slope above `tol` are reported as
/// violation intervals.
BlpReport blp_witness(const PairConfig& cfg, std::span<const double> times,
                      double tol = kBlpTol);

/// Relative entropy between the joint state and the product of its
/// marginals, S(U (rho0 (x) w) U^dagger || Lambda^(E) (x) Lambda^(S)), in nats.
double s_u_lambda(const ModelState& ms, double t,
                  double support_tol = kDefaultSupportTol);

/// (S_U(rho1) + S_U(rho2)) / 2; infinite if either term is.
double entropy_sum(const PairConfig& cfg, double t);

struct SearchConfig {
  std::size_t radial_points = 20;
  std::size_t polar_points = 20;
  std::size_t azimuthal_points = 20;
  std::size_t refine_passes = 3;
  /// Coordinate sweeps per refinement pass.
  std::size_t sweeps_per_pass = 4;
};

struct LossMinimum {
  DensityMatrix state;
  double loss;
  /// Spherical Bloch coordinates (r, theta, phi) of the minimizer.
  double r;
  double theta;
  double phi;
};

/// Minimizes s_u_lambda over system states in the closed Bloch ball with a
/// spherical grid search followed by coordinate refinement. Deterministic:
/// ties go to the lexicographically smallest (r, theta, phi).
LossMinimum minimize_loss(const DensityMatrix& omega, double t,
                          const CouplingProfile& profile,
                          const SearchConfig& search = {});

struct MeasureRecord {
  double t;
  double d_e;
  double d_s;
  double i_ext;
  double corr_bound;
  double i_t;
  double s1;
  double s2;
  double s_sum;
};

struct OraclePoint {
  double d_e;
  double d_s;
};

struct MeasureSeries {
  std::vector<MeasureRecord> records;
  /// Closed-form values per record, empty when no oracle applies.
  std::vector<OraclePoint> oracle;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Evaluates every measure on a strictly increasing grid of times.
MeasureSeries measure_series(const PairConfig& cfg, std::span<const double> times);

}  // namespace qflow
