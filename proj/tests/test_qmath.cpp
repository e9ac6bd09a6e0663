#include <doctest.h>

#include <cmath>

#include "holo/errors.hpp"
#include "holo/qmath.hpp"
#include "support.hpp"

using namespace holo;
using holo::testing::near;

namespace {

const Complex I(0.0, 1.0);

HermitianMatrix sigma_x_drive(double omega) { return HermitianMatrix(Matrix(2, {0.0, omega, omega, 0.0})); }

}  // namespace

TEST_CASE("wrap_angle lands in [0, 2pi)") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(-kPi / 2) == doctest::Approx(3 * kPi / 2));
  CHECK(wrap_angle(5 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kTwoPi) == 0.0);
  CHECK(wrap_angle(-1e-300) < kTwoPi);
}

TEST_CASE("StateVector validates its norm") {
  CHECK_NOTHROW(StateVector({1.0, 0.0}));
  CHECK_THROWS_AS(StateVector({1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(StateVector({1.0}), ValidationError);
  CHECK_THROWS_AS(StateVector::normalized({0.0, 0.0}), ValidationError);
  const StateVector s = StateVector::normalized({3.0, 4.0 * I});
  CHECK(s[0].real() == doctest::Approx(0.6));
  CHECK(s[1].imag() == doctest::Approx(0.8));
  CHECK_THROWS_AS(s.with_phase(2.0), ValidationError);
}

TEST_CASE("HermitianMatrix rejects asymmetric input and names the entry") {
  Matrix m(3);
  m(0, 2) = Complex(0.5, 0.1);
  m(2, 0) = Complex(0.5, 0.1);  // should be the conjugate
  try {
    HermitianMatrix h(m);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("(0,2)") != std::string::npos);
  }
  Matrix d(2, {Complex(1.0, 1e-3), 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(HermitianMatrix{d}, ValidationError);
}

TEST_CASE("UnitaryMatrix refuses non-unitary input") {
  CHECK_THROWS_AS(UnitaryMatrix(Matrix(2, {1.0, 0.0, 0.0, 1.01})), NumericError);
}

TEST_CASE("expm of the zero generator is the identity") {
  for (std::size_t dim : {2u, 3u}) {
    const auto h = HermitianMatrix::zero(dim);
    CHECK(max_entry_difference(expm_unitary(h, 3.7).matrix(), Matrix::identity(dim)) <= 1e-15);
    CHECK(max_entry_difference(expm_series(h, 3.7).matrix(), Matrix::identity(dim)) <= 1e-15);
  }
}

TEST_CASE("sigma_x drive for a quarter period gives -i sigma_x") {
  const double omega = 1.7;
  const Matrix expected(2, {0.0, -I, -I, 0.0});
  const auto h = sigma_x_drive(omega);
  CHECK(max_entry_difference(expm_unitary(h, kPi / (2 * omega)).matrix(), expected) <= 1e-12);
  CHECK(max_entry_difference(expm_series(h, kPi / (2 * omega)).matrix(), expected) <= 1e-12);
}

TEST_CASE("Lambda Hamiltonian at theta = pi/2 returns the holonomy after T") {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix h(3);
  h(2, 0) = h(0, 2) = r;
  h(2, 1) = h(1, 2) = r;
  const Matrix u = expm_unitary(HermitianMatrix(h), kPi).matrix();
  CHECK(near(u(0, 0), 0.0, 1e-12));
  CHECK(near(u(0, 1), -1.0, 1e-12));
  CHECK(near(u(1, 0), -1.0, 1e-12));
  CHECK(near(u(1, 1), 0.0, 1e-12));
  CHECK(near(u(2, 2), -1.0, 1e-12));
  CHECK(max_entry_difference(u, expm_series(HermitianMatrix(h), kPi).matrix()) <= 1e-11);
}

TEST_CASE("eigensystem: ascending values, small residuals") {
  auto g = holo::testing::rng(1);
  for (int n = 0; n < 500; ++n) {
    const auto h = holo::testing::random_hermitian(g, n % 2 ? 2 : 3);
    const Eigensystem es = eigensystem(h);
    for (std::size_t k = 0; k + 1 < es.dim; ++k) CHECK(es.values[k] <= es.values[k + 1]);
    for (std::size_t k = 0; k < es.dim; ++k) {
      double resid = 0.0;
      for (std::size_t i = 0; i < es.dim; ++i) {
        Complex hv = 0.0;
        for (std::size_t j = 0; j < es.dim; ++j) hv += h(i, j) * es.vectors(j, k);
        resid = std::max(resid, std::abs(hv - es.values[k] * es.vectors(i, k)));
      }
      CHECK(resid <= 1e-12);
    }
  }
}

TEST_CASE("degenerate spectra fall back to the series") {
  // Two-fold degenerate: diag(1, 1, -2) rotated by a unitary built from a drive.
  const Matrix d(3, {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -2.0});
  Matrix gen(3);
  gen(0, 2) = Complex(0.3, 0.4);
  gen(2, 0) = Complex(0.3, -0.4);
  gen(1, 2) = 0.7;
  gen(2, 1) = 0.7;
  const UnitaryMatrix v = expm_series(HermitianMatrix(gen), 1.0);
  const HermitianMatrix h(v.matrix() * d * v.matrix().adjoint());
  CHECK(eigensystem(h).degenerate);
  CHECK(max_entry_difference(expm_unitary(h, 2.3).matrix(), expm_series(h, 2.3).matrix()) <= 1e-12);
}

TEST_CASE("property: expm_unitary and expm_series agree (1000 random draws)") {
  auto g = holo::testing::rng(2);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto h = holo::testing::random_hermitian(g, n % 3 == 0 ? 2 : 3);
    const double t = holo::testing::uniform(g, 0.0, 4 * kPi);
    const auto a = expm_unitary(h, t);
    const auto b = expm_series(h, t);
    worst = std::max(worst, max_entry_difference(a.matrix(), b.matrix()));
    CHECK(unitarity_defect(a.matrix()) <= 1e-10);
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("property: group law exp(-iH(t1+t2)) = exp(-iH t1) exp(-iH t2)") {
  auto g = holo::testing::rng(3);
  for (int n = 0; n < 300; ++n) {
    const auto h = holo::testing::random_hermitian(g, 3);
    const double t1 = holo::testing::uniform(g, 0.0, 2 * kPi);
    const double t2 = holo::testing::uniform(g, 0.0, 2 * kPi);
    const auto whole = expm_unitary(h, t1 + t2);
    const auto parts = expm_unitary(h, t1) * expm_unitary(h, t2);
    CHECK(max_entry_difference(whole.matrix(), parts.matrix()) <= 1e-10);
  }
}

TEST_CASE("state_from_bloch") {
  const auto zero = state_from_bloch({0.0, 1.234});
  CHECK(near(zero[0], 1.0, 1e-15));
  CHECK(near(zero[1], 0.0, 1e-15));
  const auto one = state_from_bloch({kPi, 0.0});
  CHECK(near(one[1], 1.0, 1e-15));
  CHECK(std::abs(one[0]) <= 1e-15);
  const auto plus_i = state_from_bloch({kPi / 2, kPi / 2});
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(near(plus_i[0], r, 1e-15));
  CHECK(near(plus_i[1], I * r, 1e-15));
  CHECK_THROWS_AS(state_from_bloch({-0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(state_from_bloch({0.5, kTwoPi}), ValidationError);
  CHECK_THROWS_AS(state_from_bloch({NAN, 0.0}), ValidationError);
}

TEST_CASE("fidelity examples") {
  const auto s0 = StateVector::basis(2, 0);
  const auto s1 = StateVector::basis(2, 1);
  CHECK(fidelity(s0, s0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(s0, s1) == 0.0);
  const StateVector tilted({std::cos(0.1), std::sin(0.1)});
  CHECK(fidelity(s0, tilted) == doctest::Approx(0.990033).epsilon(1e-6));
  CHECK(fidelity(s0, tilted) == doctest::Approx(std::cos(0.1) * std::cos(0.1)).epsilon(1e-15));
  CHECK(infidelity(s0, tilted) == doctest::Approx(std::sin(0.1) * std::sin(0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(fidelity(s0, StateVector::basis(3, 0)), ValidationError);
}

TEST_CASE("property: fidelity is symmetric and phase invariant") {
  auto g = holo::testing::rng(4);
  for (int n = 0; n < 500; ++n) {
    const auto a = state_from_bloch(holo::testing::random_input(g));
    const auto b = state_from_bloch(holo::testing::random_input(g));
    const Complex ph = std::polar(1.0, holo::testing::uniform(g, 0.0, kTwoPi));
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-14));
    CHECK(fidelity(a.with_phase(ph), b) == doctest::Approx(fidelity(a, b)).epsilon(1e-14));
    CHECK(fidelity(a, b) + infidelity(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(a, b) <= 1.0);
  }
}

TEST_CASE("unitarity_defect examples") {
  CHECK(unitarity_defect(Matrix::identity(3)) == 0.0);
  const double t = kPi / 3, p = 1.2;
  const Matrix holonomy(2, {std::cos(t), -std::sin(t) * std::polar(1.0, -p), -std::sin(t) * std::polar(1.0, p),
                            -std::cos(t)});
  CHECK(unitarity_defect(holonomy) <= 1e-15);
  Matrix scaled = Matrix::identity(2);
  scaled(1, 1) = 1.01;
  CHECK(unitarity_defect(scaled) >= 0.02);
}

TEST_CASE("embed_qubit") {
  const auto e0 = embed_qubit(StateVector::basis(2, 0));
  CHECK(e0.dim() == 3);
  CHECK(e0[0] == Complex(1.0));
  CHECK(e0[2] == Complex(0.0));
  const auto e1 = embed_qubit(StateVector::basis(2, 1));
  CHECK(e1[1] == Complex(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  const auto plus = embed_qubit(StateVector({r, r}));
  CHECK(plus[0] == Complex(r));
  CHECK(plus[1] == Complex(r));
  CHECK(plus[2] == Complex(0.0));
  CHECK_THROWS_AS(embed_qubit(StateVector::basis(3, 0)), ValidationError);
}
