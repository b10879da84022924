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

// Two-qubit system-environment model driven by H(t) = f(t) sx (x) sy.
//
// The propagator is U_t = cos F - i sin F sx (x) sy with F(t) the integral of
// the coupling f. Reduced dynamics are available both as exact partial traces
// of the joint state and as the closed-form random-unitary maps; the memory
// kernel description of the constant-coupling case is integrated by a
// Volterra solver.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qflow/quantum.hpp"

namespace qflow {

/// Parametrizations of the Markovian semigroup coupling.
///
/// AsPrinted integrates f(t) = 2g e^{-2gt} / sqrt(1 - e^{-4gt}) literally,
/// giving F = arccos(e^{-2gt}). FigureConsistent uses F = arccos(e^{-2gt}) / 2,
/// the only choice under which the reduced map is a semigroup with generator
/// g (sx rho sx - rho) and the quoted distance curves hold.
enum class SemigroupConvention { AsPrinted, FigureConsistent };

class CouplingProfile {
 public:
  enum class Kind { Semigroup, Constant, Custom };

  /// Throws std::invalid_argument unless gamma > 0.
  static CouplingProfile semigroup(
      double gamma,
      SemigroupConvention convention = SemigroupConvention::FigureConsistent);
  /// Throws std::invalid_argument unless mu >= 0.
  static CouplingProfile constant(double mu);
  /// Arbitrary accumulated angle F(t); F(0) must vanish.
  static CouplingProfile custom(std::function<double(double)> angle,
                                std::string label);

  Kind kind() const { return kind_; }
  /// gamma for Semigroup, mu for Constant, 0 for Custom.
  double rate() const { return rate_; }
  SemigroupConvention convention() const { return convention_; }

  /// F(t). Throws std::domain_error for t < 0.
  double angle(double t) const;

  std::string describe() const;

 private:
  CouplingProfile(Kind kind, double rate, SemigroupConvention convention,
                  std::function<double(double)> custom, std::string label)
      : kind_(kind),
        rate_(rate),
        convention_(convention),
        custom_(std::move(custom)),
        label_(std::move(label)) {}

  Kind kind_;
  double rate_;
  SemigroupConvention convention_;
  std::function<double(double)> custom_;
  std::string label_;
};

inline double profile_F(const CouplingProfile& p, double t) { return p.angle(t); }

/// Initial product state rho0 (x) omega0 and the coupling that drives it.
struct ModelState {
  ModelState(DensityMatrix rho0, DensityMatrix omega0, CouplingProfile profile);

  DensityMatrix rho0;
  DensityMatrix omega0;
  CouplingProfile profile;
};

/// The plus state (|0> + |1>)(<0| + <1|) / 2 used as default environment.
DensityMatrix plus_state();

/// exp(-i F sx (x) sy) written out entrywise.
Unitary propagator(double angle);

/// U_t (rho0 (x) omega0) U_t^dagger.
DensityMatrix joint_state(const ModelState& ms, double t);

/// Exact marginal of the joint state. `keep` = System gives the reduced
/// system state Lambda^(E)_t(rho0; omega0), `keep` = Environment gives the
/// reduced environment state Lambda^(S)_t(omega0; rho0).
DensityMatrix reduce(const ModelState& ms, double t, Subsystem keep);

/// Same marginals from the closed-form maps
///   system:      cos^2 F rho + sin^2 F sx rho sx + (i/2) g2 [rho, sx]
///   environment: cos^2 F w   + sin^2 F sy w sy   + (i/2) g1 [w, sy]
/// with g1 = sin 2F Tr(sx rho0), g2 = sin 2F Tr(sy omega0).
DensityMatrix closed_form_map(const ModelState& ms, double t, Subsystem keep);

/// Coefficient g_k(t) of the closed-form maps: k = 1 uses rho0, k = 2 omega0.
double closed_form_g(const ModelState& ms, double t, int k);

/// Reduced system dynamics X -> Tr_E[U (X (x) omega0) U^dagger] as a channel.
Channel system_channel(const DensityMatrix& omega0, const CouplingProfile& p,
                       double t);
/// Reduced environment dynamics X -> Tr_S[U (rho0 (x) X) U^dagger].
Channel environment_channel(const DensityMatrix& rho0, const CouplingProfile& p,
                            double t);

/// gamma (sx rho sx - rho), the generator of the semigroup profile.
ComplexMatrix generator_apply(double gamma, const ComplexMatrix& rho);

/// 2 mu^2 (sx rho sx - rho), the memory kernel of the constant profile.
ComplexMatrix kernel_apply(double mu, const ComplexMatrix& rho);

/// Linear memory kernel K_lag acting on operators.
struct MemoryKernel {
  std::function<ComplexMatrix(double lag, const ComplexMatrix&)> apply;
  /// Enables the O(N) running-sum path when K does not depend on the lag.
  bool lag_independent = false;
};

MemoryKernel constant_coupling_kernel(double mu);

/// Integrates d rho/dt = int_0^t K_{t-s}(rho_s) ds on a uniform grid with a
/// trapezoidal predictor-corrector. Each step is validated as a density
/// matrix at 1e-8; nothing is renormalized. Throws std::invalid_argument for
/// a grid that is not uniform or has fewer than two points.
std::vector<DensityMatrix> volterra_solve(const MemoryKernel& kernel,
                                          const DensityMatrix& rho0,
                                          std::span<const double> times);

std::vector<DensityMatrix> volterra_solve(double mu, const DensityMatrix& rho0,
                                          std::span<const double> times);

}  // namespace qflow
