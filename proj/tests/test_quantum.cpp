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

#include "doctest.h"
#include "qflow/model.hpp"
#include "qflow/quantum.hpp"
#include "test_support.hpp"

using namespace qflow;
using qflow::testing::Random;

namespace {

Channel identity_channel(std::size_t d) {
  return Channel{d, d, [](const ComplexMatrix& x) { return x; }};
}

Channel sx_conjugation() {
  return Channel{2, 2, [](const ComplexMatrix& x) { return sigma_x() * x * sigma_x(); }};
}

Channel transpose_channel() {
  return Channel{2, 2, [](const ComplexMatrix& x) { return x.transpose(); }};
}

// Reduced system map at angle F built directly from the 4x4 matrix exponential
// and explicit index sums, independent of the library's model code.
ComplexMatrix brute_force_system_choi(double angle, const ComplexMatrix& omega) {
  using qflow::testing::EigenMatrix;
  const EigenMatrix gen = qflow::testing::to_eigen(kron(sigma_x(), sigma_y()));
  const EigenMatrix u = (cplx{0.0, -angle} * gen).exp();
  ComplexMatrix choi(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const EigenMatrix in = qflow::testing::to_eigen(kron(ComplexMatrix::unit(2, i, j), omega));
      const EigenMatrix out = u * in * u.adjoint();
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          cplx s{};
          for (Eigen::Index k = 0; k < 2; ++k)
            s += out(static_cast<Eigen::Index>(2 * a) + k, static_cast<Eigen::Index>(2 * b) + k);
          choi(2 * i + a, 2 * j + b) = s;
        }
    }
  }
  return choi;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("density validation accepts states") {
    CHECK_NOTHROW(density_from_matrix(ComplexMatrix::identity(2) * cplx{0.5, 0.0}));
    const ComplexMatrix r1{{0.655, cplx{0.205, -0.225}}, {cplx{0.205, 0.225}, 0.345}};
    const DensityMatrix rho = density_from_matrix(r1);
    CHECK(herm_eig(rho.mat()).values.back() > 0.0);
  }

  TEST_CASE("density validation reports the violated invariant") {
    try {
      density_from_matrix(ComplexMatrix::diagonal({1.2, -0.2}));
      FAIL("expected an error");
    } catch (const StateError& e) {
      CHECK(e.kind() == StateError::Kind::Positivity);
      CHECK(std::string(e.what()).find("not PSD") != std::string::npos);
      CHECK(e.deviation() == doctest::Approx(0.2));
    }
    try {
      density_from_matrix(ComplexMatrix::diagonal({0.6, 0.5}));
      FAIL("expected an error");
    } catch (const StateError& e) {
      CHECK(e.kind() == StateError::Kind::Trace);
      CHECK(std::string(e.what()).find("trace \xE2\x89\xA0 1") != std::string::npos);
      CHECK(e.deviation() == doctest::Approx(0.1));
    }
    CHECK_THROWS_WITH(density_from_matrix({{0.5, 0.1}, {0.0, 0.5}}), doctest::Contains("not Hermitian"));
  }

  TEST_CASE("density validation does not renormalize") {
    const ComplexMatrix m = ComplexMatrix::diagonal({0.5 + 5e-11, 0.5});
    CHECK(density_from_matrix(m).mat()(0, 0).real() == 0.5 + 5e-11);
  }

  TEST_CASE("Bloch vector round trip") {
    const DensityMatrix rho = qubit_from_bloch(0.3, -0.4, 0.5);
    const auto b = bloch_vector(rho);
    CHECK(b[0] == doctest::Approx(0.3));
    CHECK(b[1] == doctest::Approx(-0.4));
    CHECK(b[2] == doctest::Approx(0.5));
    CHECK_THROWS_AS(qubit_from_bloch(1.0, 1.0, 0.0), std::invalid_argument);
  }

  TEST_CASE("unitary validation") {
    CHECK_NOTHROW(Unitary::from_matrix(sigma_y()));
    CHECK_THROWS_AS(Unitary::from_matrix(ComplexMatrix::diagonal({1.0, 2.0})), StateError);
  }

  TEST_CASE("Choi of the identity channel is d times the maximally entangled projector") {
    for (std::size_t d : {2u, 3u}) {
      const ComplexMatrix choi = choi_of(identity_channel(d));
      std::vector<cplx> omega(d * d, 0.0);
      for (std::size_t i = 0; i < d; ++i) omega[i * d + i] = 1.0;
      CHECK(max_abs_diff(choi, qflow::testing::ket_bra(omega)) == 0.0);
      const HermEigen e = herm_eig(choi);
      CHECK(e.values[0] == doctest::Approx(static_cast<double>(d)));
      CHECK(std::abs(e.values[1]) < 1e-14);
      CHECK(is_cptp(choi, {d, d}).passed());
    }
  }

  TEST_CASE("Choi of a unitary conjugation is rank one") {
    const ComplexMatrix choi = choi_of(sx_conjugation());
    const HermEigen e = herm_eig(choi);
    CHECK(e.values[0] == doctest::Approx(2.0));
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(e.values[k]) < 1e-14);
    CHECK(choi.trace().real() == doctest::Approx(2.0));
  }

  TEST_CASE("Choi of the reduced system map at F = pi/6") {
    const double f = std::numbers::pi / 6.0;
    const ComplexMatrix omega = plus_state().mat();
    const ComplexMatrix reference = brute_force_system_choi(f, omega);
    const CouplingProfile p = CouplingProfile::custom([f](double t) { return f * t; }, "linear");
    const ComplexMatrix choi = choi_of(system_channel(plus_state(), p, 1.0));
    CHECK(max_abs_diff(choi, reference) < 1e-14);
    const HermEigen e = herm_eig(choi);
    CHECK(e.values[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(e.values[2]) < 1e-12);
    CHECK(std::abs(e.values[3]) < 1e-12);
  }

  TEST_CASE("transpose map is positive but not completely positive") {
    const CptpReport r = is_cptp(choi_of(transpose_channel()), {2, 2});
    CHECK_FALSE(r.passed());
    CHECK_FALSE(r.completely_positive);
    CHECK(r.trace_preserving);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-9));
  }

  TEST_CASE("non trace-preserving maps fail the TP check") {
    const Channel half{2, 2, [](const ComplexMatrix& x) { return x * cplx{0.5, 0.0}; }};
    const CptpReport r = is_cptp(choi_of(half), {2, 2});
    CHECK(r.completely_positive);
    CHECK_FALSE(r.trace_preserving);
    CHECK(r.tp_deviation == doctest::Approx(std::sqrt(0.5)));
  }

  TEST_CASE("reduced environment map is CPTP at sampled times") {
    Random rng(21);
    const CouplingProfile p = CouplingProfile::constant(1.0);
    for (int n = 0; n < 20; ++n) {
      const double t = rng.uniform(0.0, 4.0);
      CHECK(is_cptp(choi_of(environment_channel(rng.qubit(), p, t)), {2, 2}).passed());
    }
  }

  TEST_CASE("Choi extraction is linear in the channel") {
    Random rng(22);
    const CouplingProfile p = CouplingProfile::constant(1.0);
    for (int n = 0; n < 20; ++n) {
      const double w = rng.uniform();
      const Channel a = system_channel(rng.qubit(), p, rng.uniform(0, 3));
      const Channel b = sx_conjugation();
      const Channel mix{2, 2, [&](const ComplexMatrix& x) {
                          return a(x) * cplx{w, 0.0} + b(x) * cplx{1.0 - w, 0.0};
                        }};
      const ComplexMatrix expected = choi_of(a) * cplx{w, 0.0} + choi_of(b) * cplx{1.0 - w, 0.0};
      CHECK(max_abs_diff(choi_of(mix), expected) <= 1e-12);
    }
  }

  TEST_CASE("relative entropy worked values") {
    const DensityMatrix zero = DensityMatrix::from_matrix(ComplexMatrix::diagonal({1.0, 0.0}));
    const DensityMatrix one = DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.0, 1.0}));
    const DensityMatrix mixed = maximally_mixed(2);
    CHECK(relative_entropy(zero, zero) == 0.0);
    CHECK(relative_entropy(mixed, mixed) == doctest::Approx(0.0));
    CHECK(relative_entropy(zero, mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(is_infinite(relative_entropy(zero, one)));
    const DensityMatrix skewed = DensityMatrix::from_matrix(ComplexMatrix::diagonal({0.25, 0.75}));
    // 1/2 ln(1/2 / 1/4) + 1/2 ln(1/2 / 3/4) = 1/2 ln(4/3)
    CHECK(relative_entropy(mixed, skewed) == doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-14));
    CHECK(std::abs(relative_entropy(mixed, skewed) - 0.14384) < 1e-5);
  }

  TEST_CASE("relative entropy rejects mismatched dimensions") {
    CHECK_THROWS_AS(relative_entropy(maximally_mixed(2), maximally_mixed(3)), std::invalid_argument);
  }

  TEST_CASE("Klein inequality on random pairs") {
    Random rng(23);
    for (int n = 0; n < 200; ++n) {
      const std::size_t dim = n % 2 == 0 ? 2 : 4;
      const DensityMatrix a = rng.density(dim);
      const DensityMatrix b = rng.density(dim);
      const double s = relative_entropy(a, b);
      CHECK(s >= 0.0);
      CHECK(s > 1e-9);  // distinct random states
      CHECK(relative_entropy(a, a) <= 1e-9);
    }
  }

  TEST_CASE("relative entropy is unitarily covariant") {
    Random rng(24);
    for (int n = 0; n < 50; ++n) {
      const DensityMatrix a = rng.density(4);
      const DensityMatrix b = rng.density(4);
      const Unitary u = Unitary::from_matrix(rng.unitary(4));
      CHECK(std::abs(relative_entropy(u.conjugate(a), u.conjugate(b)) - relative_entropy(a, b)) <= 1e-9);
    }
  }

  TEST_CASE("marginals of valid joint states are valid states") {
    Random rng(25);
    for (int n = 0; n < 50; ++n) {
      const DensityMatrix joint = rng.density(4);
      CHECK_NOTHROW(density_from_matrix(partial_trace(joint.mat(), {2, 2}, Subsystem::System)));
      CHECK_NOTHROW(density_from_matrix(partial_trace(joint.mat(), {2, 2}, Subsystem::Environment)));
    }
  }

  TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(maximally_mixed(4)) == doctest::Approx(std::log(4.0)));
    CHECK(von_neumann_entropy(qubit_from_bloch(0, 0, 1)) == doctest::Approx(0.0));
  }
}
