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

#include "qflow/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qflow {

CouplingProfile CouplingProfile::semigroup(double gamma,
                                           SemigroupConvention convention) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("semigroup rate gamma must be positive");
  }
  return CouplingProfile(Kind::Semigroup, gamma, convention, {}, "");
}

CouplingProfile CouplingProfile::constant(double mu) {
  if (!(mu >= 0.0)) {
    throw std::invalid_argument("constant coupling mu must be non-negative");
  }
  return CouplingProfile(Kind::Constant, mu,
                         SemigroupConvention::FigureConsistent, {}, "");
}

CouplingProfile CouplingProfile::custom(std::function<double(double)> angle,
                                        std::string label) {
  if (!angle) throw std::invalid_argument("custom profile needs an angle function");
  const double f0 = angle(0.0);
  if (std::abs(f0) > 1e-15) {
    std::ostringstream msg;
    msg << "custom profile must satisfy F(0) = 0, got " << f0;
    throw std::invalid_argument(msg.str());
  }
  return CouplingProfile(Kind::Custom, 0.0,
                         SemigroupConvention::FigureConsistent, std::move(angle),
                         std::move(label));
}

double CouplingProfile::angle(double t) const {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "time must be non-negative, got " << t;
    throw std::domain_error(msg.str());
  }
  switch (kind_) {
    case Kind::Semigroup: {
      const double full = std::acos(std::exp(-2.0 * rate_ * t));
      return convention_ == SemigroupConvention::AsPrinted ? full : 0.5 * full;
    }
    case Kind::Constant:
      return rate_ * t;
    case Kind::Custom:
      return custom_(t);
  }
  return 0.0;
}

std::string CouplingProfile::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Semigroup:
      out << "semigroup(gamma=" << rate_ << ", convention="
          << (convention_ == SemigroupConvention::AsPrinted ? "printed" : "figure")
          << ")";
      break;
    case Kind::Constant:
      out << "constant(mu=" << rate_ << ")";
      break;
    case Kind::Custom:
      out << "custom(" << label_ << ")";
      break;
  }
  return out.str();
}

ModelState::ModelState(DensityMatrix rho, DensityMatrix omega,
                       CouplingProfile p)
    : rho0(std::move(rho)), omega0(std::move(omega)), profile(std::move(p)) {
  if (rho0.dim() != 2 || omega0.dim() != 2) {
    throw std::invalid_argument("model states must be qubits");
  }
}

DensityMatrix plus_state() {
  return DensityMatrix::from_matrix({{0.5, 0.5}, {0.5, 0.5}});
}

Unitary propagator(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  ComplexMatrix u{{c, 0.0, 0.0, -s},
                  {0.0, c, s, 0.0},
                  {0.0, -s, c, 0.0},
                  {s, 0.0, 0.0, c}};
  return Unitary::from_matrix(u);
}

DensityMatrix joint_state(const ModelState& ms, double t) {
  const Unitary u = propagator(ms.profile.angle(t));
  return u.conjugate(
      DensityMatrix::from_matrix(kron(ms.rho0.mat(), ms.omega0.mat())));
}

DensityMatrix reduce(const ModelState& ms, double t, Subsystem keep) {
  const DensityMatrix joint = joint_state(ms, t);
  const Subsystem traced =
      keep == Subsystem::System ? Subsystem::Environment : Subsystem::System;
  return DensityMatrix::from_matrix(partial_trace(joint.mat(), {2, 2}, traced));
}

double closed_form_g(const ModelState& ms, double t, int k) {
  const double s2 = std::sin(2.0 * ms.profile.angle(t));
  switch (k) {
    case 1:
      return s2 * (sigma_x() * ms.rho0.mat()).trace().real();
    case 2:
      return s2 * (sigma_y() * ms.omega0.mat()).trace().real();
    default:
      throw std::invalid_argument("g_k is defined for k = 1, 2");
  }
}

DensityMatrix closed_form_map(const ModelState& ms, double t, Subsystem keep) {
  const double f = ms.profile.angle(t);
  const double cos2 = std::cos(f) * std::cos(f);
  const double sin2 = std::sin(f) * std::sin(f);
  const cplx half_i{0.0, 0.5};
  if (keep == Subsystem::System) {
    const ComplexMatrix& rho = ms.rho0.mat();
    const ComplexMatrix sx = sigma_x();
    const double g2 = closed_form_g(ms, t, 2);
    return DensityMatrix::from_matrix(cos2 * rho + sin2 * (sx * rho * sx) +
                                      half_i * g2 * commutator(rho, sx));
  }
  const ComplexMatrix& omega = ms.omega0.mat();
  const ComplexMatrix sy = sigma_y();
  const double g1 = closed_form_g(ms, t, 1);
  return DensityMatrix::from_matrix(cos2 * omega + sin2 * (sy * omega * sy) +
                                    half_i * g1 * commutator(omega, sy));
}

Channel system_channel(const DensityMatrix& omega0, const CouplingProfile& p,
                       double t) {
  const ComplexMatrix u = propagator(p.angle(t)).mat();
  const ComplexMatrix omega = omega0.mat();
  return Channel{2, 2, [u, omega](const ComplexMatrix& x) {
                   return partial_trace(u * kron(x, omega) * u.adjoint(), {2, 2},
                                        Subsystem::Environment);
                 }};
}

Channel environment_channel(const DensityMatrix& rho0, const CouplingProfile& p,
                            double t) {
  const ComplexMatrix u = propagator(p.angle(t)).mat();
  const ComplexMatrix rho = rho0.mat();
  return Channel{2, 2, [u, rho](const ComplexMatrix& x) {
                   return partial_trace(u * kron(rho, x) * u.adjoint(), {2, 2},
                                        Subsystem::System);
                 }};
}

namespace {

ComplexMatrix dephasing_action(double rate, const ComplexMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("expected a qubit operator");
  const ComplexMatrix sx = sigma_x();
  return rate * (sx * rho * sx - rho);
}

}  // namespace

ComplexMatrix generator_apply(double gamma, const ComplexMatrix& rho) {
  return dephasing_action(gamma, rho);
}

ComplexMatrix kernel_apply(double mu, const ComplexMatrix& rho) {
  return dephasing_action(2.0 * mu * mu, rho);
}

MemoryKernel constant_coupling_kernel(double mu) {
  return MemoryKernel{
      [mu](double, const ComplexMatrix& x) { return kernel_apply(mu, x); },
      true};
}

namespace {

double uniform_step(std::span<const double> times) {
  if (times.size() < 2) {
    throw std::invalid_argument("Volterra grid needs at least two points");
  }
  const double h = times[1] - times[0];
  if (!(h > 0.0)) throw std::invalid_argument("Volterra grid step must be positive");
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double step = times[k] - times[k - 1];
    if (std::abs(step - h) > 1e-9 * h + 1e-15) {
      std::ostringstream msg;
      msg << "Volterra grid is not uniform at index " << k;
      throw std::invalid_argument(msg.str());
    }
  }
  return h;
}

constexpr int kCorrectorPasses = 2;
constexpr double kVolterraStateTol = 1e-8;

}  // namespace

std::vector<DensityMatrix> volterra_solve(const MemoryKernel& kernel,
                                          const DensityMatrix& rho0,
                                          std::span<const double> times) {
  const double h = uniform_step(times);
  const std::size_t n_points = times.size();
  const std::size_t dim = rho0.dim();
  const cplx half{0.5, 0.0};

  std::vector<ComplexMatrix> rho;
  rho.reserve(n_points);
  rho.push_back(rho0.mat());

  // Z_n = int_0^{t_n} K_{t_n - s}(rho_s) ds, trapezoid rule.
  ComplexMatrix z_prev = ComplexMatrix::zeros(dim);
  // Lag-independent path: sum_{j=1..n} rho_j.
  ComplexMatrix interior_sum = ComplexMatrix::zeros(dim);

  for (std::size_t n = 0; n + 1 < n_points; ++n) {
    const double t_next = times[n + 1];
    // Everything in Z_{n+1} except the (1/2) K_0(rho_{n+1}) endpoint.
    ComplexMatrix history(dim);
    if (kernel.lag_independent) {
      history = kernel.apply(0.0, half * rho.front() + interior_sum) * cplx{h, 0.0};
    } else {
      history = kernel.apply(t_next - times[0], rho.front()) * cplx{0.5 * h, 0.0};
      for (std::size_t j = 1; j <= n; ++j)
        history += kernel.apply(t_next - times[j], rho[j]) * cplx{h, 0.0};
    }

    ComplexMatrix next = rho[n] + z_prev * cplx{h, 0.0};
    ComplexMatrix z_next = z_prev;
    for (int pass = 0; pass < kCorrectorPasses; ++pass) {
      z_next = history + kernel.apply(0.0, next) * cplx{0.5 * h, 0.0};
      next = rho[n] + (z_prev + z_next) * cplx{0.5 * h, 0.0};
    }
    z_next = history + kernel.apply(0.0, next) * cplx{0.5 * h, 0.0};

    rho.push_back(next);
    if (kernel.lag_independent) interior_sum += next;
    z_prev = z_next;
  }

  std::vector<DensityMatrix> out;
  out.reserve(n_points);
  for (const auto& m : rho) out.push_back(DensityMatrix::from_matrix(m, kVolterraStateTol));
  return out;
}

std::vector<DensityMatrix> volterra_solve(double mu, const DensityMatrix& rho0,
                                          std::span<const double> times) {
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be non-negative");
  return volterra_solve(constant_coupling_kernel(mu), rho0, times);
}

}  // namespace qflow
