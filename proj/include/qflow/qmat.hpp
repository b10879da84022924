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

// Dense complex matrix kernels for the small (qubit-sized) operators used
// throughout the library: arithmetic, tensor products, partial traces and
// Hermitian spectral functions.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace qflow {

using cplx = std::complex<double>;

/// Largest supported matrix dimension.
inline constexpr std::size_t kMaxDim = 64;

/// Square dense complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(const std::vector<double>& diag);
  /// |i><j| in dimension dim.
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// Largest |m - m^dagger| entry.
  double hermiticity_deviation() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

/// Frobenius norm of a - b.
double distance_frobenius(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest entrywise |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutator [a, b] = ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// Tensor product a (x) b. The first factor is the system, the second the
/// environment, everywhere in the library.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { System, Environment };

struct Factorization {
  std::size_t system_dim;
  std::size_t environment_dim;
};

/// Traces out `traced` from a matrix on H_S (x) H_E. Tracing out the
/// environment yields the system marginal and vice versa.
ComplexMatrix partial_trace(const ComplexMatrix& m, Factorization dims,
                            Subsystem traced);

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending and column k of `vectors` belongs to `values[k]`.
struct HermEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Output is deterministic: sweeps run in fixed (p, q) order, eigenpairs are
/// sorted by descending eigenvalue, and each eigenvector is scaled so that its
/// first non-negligible component is real and positive. Throws
/// std::invalid_argument ("hermiticity violated") when the input departs from
/// Hermiticity by more than `herm_tol` in any entry.
HermEigen herm_eig(const ComplexMatrix& m, double herm_tol = 1e-10);

/// Sum of singular values. Hermitian input uses the eigenvalues directly;
/// anything else goes through the spectrum of m^dagger m.
double trace_norm(const ComplexMatrix& m);

inline constexpr double kDefaultSupportTol = 1e-12;

/// Logarithm of a Hermitian PSD matrix restricted to its support.
struct HermitianLog {
  ComplexMatrix log;
  /// Projector onto the eigenspace with eigenvalues <= support_tol.
  ComplexMatrix kernel_projector;
  std::size_t support_rank;
};

/// Natural logarithm V diag(log l) V^dagger over eigenvalues above
/// `support_tol`. Eigenvalues at or below the tolerance are left out of the
/// log and reported through `kernel_projector`. Throws std::domain_error
/// ("not PSD") for an eigenvalue below -support_tol.
HermitianLog matrix_log_hermitian(const ComplexMatrix& m,
                                  double support_tol = kDefaultSupportTol);

}  // namespace qflow
