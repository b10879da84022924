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

#include "qflow/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qflow {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    std::ostringstream msg;
    msg << "matrix dimension " << dim << " outside [1, " << kMaxDim << "]";
    throw std::invalid_argument(msg.str());
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
  check_dim(dim);
  data_.assign(dim * dim, cplx{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  check_dim(dim_);
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("matrix literal is not square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i,
                                  std::size_t j) {
  ComplexMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_deviation() const {
  double dev = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return dev;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

double distance_frobenius(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix r(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          r(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Factorization dims,
                            Subsystem traced) {
  const std::size_t ds = dims.system_dim;
  const std::size_t de = dims.environment_dim;
  if (ds == 0 || de == 0 || ds * de != m.dim()) {
    std::ostringstream msg;
    msg << "incompatible factorization: " << m.dim() << " != " << ds << "*"
        << de;
    throw std::invalid_argument(msg.str());
  }
  if (traced == Subsystem::Environment) {
    ComplexMatrix r(ds);
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < ds; ++j)
        for (std::size_t k = 0; k < de; ++k) r(i, j) += m(i * de + k, j * de + k);
    return r;
  }
  ComplexMatrix r(de);
  for (std::size_t k = 0; k < de; ++k)
    for (std::size_t l = 0; l < de; ++l)
      for (std::size_t i = 0; i < ds; ++i) r(k, l) += m(i * de + k, i * de + l);
  return r;
}

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-13;
constexpr double kPhaseThreshold = 1e-10;

}  // namespace

HermEigen herm_eig(const ComplexMatrix& m, double herm_tol) {
  const double dev = m.hermiticity_deviation();
  if (dev > herm_tol) {
    std::ostringstream msg;
    msg << "hermiticity violated (max deviation " << dev << ")";
    throw std::invalid_argument(msg.str());
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, m.frobenius_norm());

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) < kJacobiTol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b == 0.0) continue;
        // Rotate the (p, q) block: J = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
        const cplx phase = std::conj(a(p, q)) / b;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * phase;
        const cplx jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a(src, src).real();
    cplx fix{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const double mag = std::abs(v(k, src));
      if (mag > kPhaseThreshold) {
        fix = std::conj(v(k, src)) / mag;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, src) * fix;
  }
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.hermiticity_deviation() <= 1e-12) {
    const auto eig = herm_eig(m, 1e-12);
    double s = 0.0;
    for (double l : eig.values) s += std::abs(l);
    return s;
  }
  ComplexMatrix g = m.adjoint() * m;
  g = (g + g.adjoint()) * cplx{0.5, 0.0};
  const auto eig = herm_eig(g);
  double s = 0.0;
  for (double l : eig.values) s += l < 1e-14 ? 0.0 : std::sqrt(l);
  return s;
}

HermitianLog matrix_log_hermitian(const ComplexMatrix& m, double support_tol) {
  const auto eig = herm_eig(m);
  const std::size_t n = m.dim();
  if (eig.values.back() < -support_tol) {
    std::ostringstream msg;
    msg << "not PSD (min eigenvalue " << eig.values.back() << ")";
    throw std::domain_error(msg.str());
  }
  HermitianLog out{ComplexMatrix(n), ComplexMatrix(n), 0};
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    const bool in_support = lambda > support_tol;
    if (in_support) ++out.support_rank;
    ComplexMatrix& target = in_support ? out.log : out.kernel_projector;
    const double weight = in_support ? std::log(lambda) : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        target(i, j) +=
            weight * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

}  // namespace qflow
