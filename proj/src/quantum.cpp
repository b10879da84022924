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

#include "qflow/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qflow {

namespace {

std::string with_deviation(const std::string& what, double dev) {
  std::ostringstream msg;
  msg << what << " (deviation " << dev << ")";
  return msg.str();
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, double tol) {
  const double herm = m.hermiticity_deviation();
  if (herm > tol) {
    throw StateError(StateError::Kind::Hermiticity, herm,
                     with_deviation("not Hermitian", herm));
  }
  const double trace_dev = std::abs(m.trace() - cplx{1.0, 0.0});
  if (trace_dev > tol) {
    throw StateError(StateError::Kind::Trace, trace_dev,
                     with_deviation("trace \xE2\x89\xA0 1", trace_dev));
  }
  ComplexMatrix h = (m + m.adjoint()) * cplx{0.5, 0.0};
  const auto eig = herm_eig(h);
  const double min_eig = eig.values.back();
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "not PSD (min eigenvalue " << min_eig << ")";
    throw StateError(StateError::Kind::Positivity, -min_eig, msg.str());
  }
  return DensityMatrix(m);
}

DensityMatrix qubit_from_bloch(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (r > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "Bloch vector length " << r << " exceeds 1";
    throw std::invalid_argument(msg.str());
  }
  ComplexMatrix m{{0.5 * (1.0 + z), cplx{0.5 * x, -0.5 * y}},
                  {cplx{0.5 * x, 0.5 * y}, 0.5 * (1.0 - z)}};
  return DensityMatrix::from_matrix(m);
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("Bloch vector requires a qubit state");
  }
  const auto& m = rho.mat();
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix maximally_mixed(std::size_t dim) {
  return DensityMatrix::from_matrix(ComplexMatrix::identity(dim) *
                                    cplx{1.0 / static_cast<double>(dim), 0.0});
}

Unitary Unitary::from_matrix(const ComplexMatrix& m, double tol) {
  const double dev =
      distance_frobenius(m.adjoint() * m, ComplexMatrix::identity(m.dim()));
  if (dev > tol) {
    throw StateError(StateError::Kind::Unitarity, dev,
                     with_deviation("not unitary", dev));
  }
  return Unitary(m);
}

DensityMatrix Unitary::conjugate(const DensityMatrix& rho) const {
  return DensityMatrix::from_matrix(mat_ * rho.mat() * mat_.adjoint());
}

ComplexMatrix choi_of(const Channel& c) {
  ComplexMatrix choi(c.dim_in * c.dim_out);
  for (std::size_t i = 0; i < c.dim_in; ++i) {
    for (std::size_t j = 0; j < c.dim_in; ++j) {
      const ComplexMatrix image = c(ComplexMatrix::unit(c.dim_in, i, j));
      if (image.dim() != c.dim_out) {
        throw std::invalid_argument("channel output has the wrong dimension");
      }
      for (std::size_t k = 0; k < c.dim_out; ++k)
        for (std::size_t l = 0; l < c.dim_out; ++l)
          choi(i * c.dim_out + k, j * c.dim_out + l) = image(k, l);
    }
  }
  return choi;
}

CptpReport is_cptp(const ComplexMatrix& choi, Factorization dims, double tol) {
  const ComplexMatrix h = (choi + choi.adjoint()) * cplx{0.5, 0.0};
  CptpReport report{};
  report.min_eigenvalue = herm_eig(h).values.back();
  const ComplexMatrix reduced =
      partial_trace(choi, dims, Subsystem::Environment);
  report.tp_deviation = distance_frobenius(
      reduced, ComplexMatrix::identity(dims.system_dim));
  report.completely_positive =
      report.min_eigenvalue >= -tol && choi.hermiticity_deviation() <= tol;
  report.trace_preserving = report.tp_deviation <= tol;
  return report;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : herm_eig(rho.mat()).values)
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative entropy of states of different dimension");
  }
  const HermitianLog log_sigma = matrix_log_hermitian(sigma.mat(), support_tol);
  if (log_sigma.support_rank < sigma.dim()) {
    const double leaked =
        (log_sigma.kernel_projector * rho.mat()).trace().real();
    if (leaked > support_tol) return kInfiniteEntropy;
  }
  const HermitianLog log_rho = matrix_log_hermitian(rho.mat(), support_tol);
  // Tr rho log rho restricted to the support of rho; 0 log 0 = 0.
  const double self_term = (rho.mat() * log_rho.log).trace().real();
  const double cross_term = (rho.mat() * log_sigma.log).trace().real();
  const double value = self_term - cross_term;
  // Klein's inequality; only round-off can push the value below zero.
  return value < 0.0 && value > -1e-12 ? 0.0 : value;
}

}  // namespace qflow
