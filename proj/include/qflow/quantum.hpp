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

// Validated quantum objects: density matrices, unitaries and operationally
// defined channels, together with Choi-matrix CPTP checks and the quantum
// relative entropy.

#pragma once

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "qflow/qmat.hpp"

namespace qflow {

inline constexpr double kStateTol = 1e-10;

/// Sentinel for a divergent relative entropy (support mismatch).
inline constexpr double kInfiniteEntropy = std::numeric_limits<double>::infinity();

inline bool is_infinite(double value) { return value == kInfiniteEntropy; }

/// Raised when a matrix fails to be a density matrix or a unitary. Carries
/// the violated invariant and the measured deviation.
class StateError : public std::invalid_argument {
 public:
  enum class Kind { Hermiticity, Trace, Positivity, Unitarity, Dimension };

  StateError(Kind kind, double deviation, const std::string& what)
      : std::invalid_argument(what), kind_(kind), deviation_(deviation) {}

  Kind kind() const { return kind_; }
  double deviation() const { return deviation_; }

 private:
  Kind kind_;
  double deviation_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity within `tol`. Never
  /// renormalizes.
  static DensityMatrix from_matrix(const ComplexMatrix& m, double tol = kStateTol);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

inline DensityMatrix density_from_matrix(const ComplexMatrix& m,
                                         double tol = kStateTol) {
  return DensityMatrix::from_matrix(m, tol);
}

/// Qubit state (I + x sx + y sy + z sz) / 2; requires |(x, y, z)| <= 1.
DensityMatrix qubit_from_bloch(double x, double y, double z);
std::array<double, 3> bloch_vector(const DensityMatrix& rho);

DensityMatrix maximally_mixed(std::size_t dim);

class Unitary {
 public:
  static Unitary from_matrix(const ComplexMatrix& m, double tol = kStateTol);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

  /// U rho U^dagger.
  DensityMatrix conjugate(const DensityMatrix& rho) const;

 private:
  explicit Unitary(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// A linear map given by its action. The action must be deterministic and
/// free of side effects; it is evaluated on arbitrary (not necessarily
/// positive) input matrices such as matrix units.
struct Channel {
  std::size_t dim_in;
  std::size_t dim_out;
  std::function<ComplexMatrix(const ComplexMatrix&)> action;

  ComplexMatrix operator()(const ComplexMatrix& x) const { return action(x); }
};

/// sum_ij |i><j| (x) c(|i><j|), input factor first.
ComplexMatrix choi_of(const Channel& c);

struct CptpReport {
  double min_eigenvalue;
  /// Frobenius norm of Tr_out(choi) - I.
  double tp_deviation;
  bool completely_positive;
  bool trace_preserving;
  bool passed() const { return completely_positive && trace_preserving; }
};

CptpReport is_cptp(const ComplexMatrix& choi, Factorization dims,
                   double tol = kStateTol);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma) = Tr rho (log rho - log sigma) in nats, or
/// kInfiniteEntropy when rho has more than `support_tol` weight on the
/// kernel of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol = kDefaultSupportTol);

}  // namespace qflow
