#include <doctest.h>

#include <cmath>
#include <vector>

#include "holo/errors.hpp"
#include "holo/holonomic.hpp"
#include "support.hpp"

using namespace holo;
using namespace holo::holonomic;
using holo::testing::near;

namespace {

const Complex I(0.0, 1.0);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

}  // namespace

TEST_CASE("LambdaGateSpec validation and canonical phase") {
  CHECK_THROWS_AS(LambdaGateSpec(-0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(LambdaGateSpec(kPi + 1e-9, 0.0), ValidationError);
  CHECK_THROWS_AS(LambdaGateSpec(1.0, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(LambdaGateSpec(1.0, 0.0, -2.0), ValidationError);
  const LambdaGateSpec spec(1.0, -kPi / 2, 2.0);
  CHECK(spec.phi() == doctest::Approx(3 * kPi / 2));
  CHECK(spec.duration() == doctest::Approx(kPi / 2));
  CHECK(std::norm(spec.a()) + std::norm(spec.b()) == doctest::Approx(1.0));
}

TEST_CASE("SystematicError validation") {
  CHECK_THROWS_AS((SystematicError{1.5, 0, 0}.validate()), ValidationError);
  CHECK_THROWS_AS((SystematicError{0, NAN, 0}.validate()), ValidationError);
  CHECK_NOTHROW((SystematicError{-1.0, 0.3, 0.2}.validate()));
  CHECK((SystematicError{0.2, 0, 0}.beyond_perturbative_regime()));
  CHECK_FALSE((SystematicError{0.05, 0, 0}.beyond_perturbative_regime()));
  CHECK((SystematicError{0.01, 0, 0}.pulse_area_error()) == doctest::Approx(0.01 * kPi));
}

TEST_CASE("lambda_hamiltonian examples") {
  const auto h0 = lambda_hamiltonian(LambdaGateSpec(0.0, 0.0, 1.5), {});
  CHECK(std::abs(h0(kExcited, 0)) == 0.0);
  CHECK(std::abs(h0(kExcited, 1)) == doctest::Approx(1.5));

  const auto hpi = lambda_hamiltonian(LambdaGateSpec(kPi, 0.7), {});
  CHECK(std::abs(hpi(kExcited, 1)) <= 1e-16);
  CHECK(near(hpi(kExcited, 0), std::polar(1.0, 0.7), 1e-15));

  const auto hh = lambda_hamiltonian(LambdaGateSpec(kPi / 2, 0.0), {0.01, 0, 0});
  CHECK(std::abs(hh(kExcited, 0)) == doctest::Approx(1.01 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(hh(kExcited, 1)) == doctest::Approx(1.01 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(hh(0, 1) == Complex(0.0));
}

TEST_CASE("bright_dark_basis") {
  const auto b0 = bright_dark_basis(LambdaGateSpec(0.0, 0.0, 2.0), {});
  CHECK(near(b0.dark[0], 1.0, 1e-15));
  CHECK(b0.energies[0] == 0.0);
  CHECK(b0.energies[1] == 2.0);
  CHECK(b0.energies[2] == -2.0);

  const auto bh = bright_dark_basis(LambdaGateSpec(kPi / 2, 0.0), {});
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(near(bh.dark[0], r, 1e-15));
  CHECK(near(bh.dark[1], -r, 1e-15));

  auto g = holo::testing::rng(10);
  for (int n = 0; n < 300; ++n) {
    const LambdaGateSpec spec(holo::testing::uniform(g, 0, kPi), holo::testing::uniform(g, 0, kTwoPi),
                              holo::testing::uniform(g, 0.2, 3.0));
    const SystematicError err{holo::testing::uniform(g, -0.5, 0.5), holo::testing::uniform(g, -0.2, 0.2),
                              holo::testing::uniform(g, -0.2, 0.2)};
    const auto basis = bright_dark_basis(spec, err);
    const auto h = lambda_hamiltonian(spec, err);
    const std::array<const StateVector*, 3> vecs{&basis.dark, &basis.bright_plus, &basis.bright_minus};
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t i = 0; i < 3; ++i) {
        Complex hv = 0.0;
        for (std::size_t j = 0; j < 3; ++j) hv += h(i, j) * (*vecs[k])[j];
        CHECK(std::abs(hv - basis.energies[k] * (*vecs[k])[i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("ideal_gate examples") {
  const auto z = ideal_gate(0.0, 0.4).matrix();
  CHECK(max_entry_difference(z, Matrix(2, {1.0, 0.0, 0.0, -1.0})) <= 1e-15);
  const auto x = ideal_gate(kPi / 2, 0.0).matrix();
  CHECK(max_entry_difference(x, Matrix(2, {0.0, -1.0, -1.0, 0.0})) <= 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  const auto had = ideal_gate(kPi / 4, kPi).matrix();
  CHECK(max_entry_difference(had, Matrix(2, {r, r, r, -r})) <= 1e-15);
}

TEST_CASE("exact_propagator examples") {
  const auto u = exact_propagator(LambdaGateSpec(kPi / 2, 0.0), {}).matrix();
  CHECK(max_entry_difference(u.block(2), Matrix(2, {0.0, -1.0, -1.0, 0.0})) <= 1e-12);
  CHECK(near(u(2, 2), -1.0, 1e-12));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(u(k, 2)) <= 1e-12);
    CHECK(std::abs(u(2, k)) <= 1e-12);
  }

  const auto p = exact_propagator(LambdaGateSpec(kPi, 0.0), {0.01, 0, 0}).matrix();
  CHECK(p(0, 0).real() == doctest::Approx(-std::cos(0.01 * kPi)).epsilon(1e-12));
  CHECK(p(0, 0).real() == doctest::Approx(-0.9995066).epsilon(1e-7));

  const auto full = exact_propagator(LambdaGateSpec(kPi / 2, 0.0), {1.0, 0, 0}).matrix();
  CHECK(max_entry_difference(full, Matrix::identity(3)) <= 1e-10);
}

TEST_CASE("property: cyclicity of the zero-error propagator") {
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double theta = i * kPi / 8, phi = j * kPi / 3;
      const auto u = exact_propagator(LambdaGateSpec(theta, phi), {}).matrix();
      CHECK(max_entry_difference(u.block(2), ideal_gate(theta, phi).matrix()) <= 1e-10);
      CHECK(near(u(2, 2), -1.0, 1e-10));
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(u(k, 2)) <= 1e-12);
        CHECK(std::abs(u(2, k)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("closed_form_propagator examples") {
  const LambdaGateSpec spec(1.1, 0.6);
  const auto z = closed_form_propagator(spec, {});
  CHECK(max_entry_difference(z.block(2), ideal_gate(1.1, 0.6).matrix()) <= 1e-15);
  CHECK(z(2, 2) == Complex(-1.0));
  CHECK(std::abs(z(0, 2)) == 0.0);

  const auto p = closed_form_propagator(LambdaGateSpec(kPi, 0.0), {0.01, 0, 0});
  CHECK(p(0, 0).real() == doctest::Approx(-std::cos(0.01 * kPi)).epsilon(1e-14));

  const LambdaGateSpec s3(kPi / 2, kPi / 3);
  const SystematicError e3{0.05, 0, 0};
  const auto q = closed_form_propagator(s3, e3);
  CHECK(std::abs(q(0, kExcited)) == doctest::Approx(std::sin(0.05 * kPi) * std::sin(kPi / 4)).epsilon(1e-14));
  // The printed phase on (0,e) is e^{+i phi}; direct exponentiation gives e^{-i phi}.
  const auto x = exact_propagator(s3, e3).matrix();
  CHECK(std::arg(q(0, kExcited) / x(0, kExcited)) == doctest::Approx(2 * kPi / 3).epsilon(1e-10));
}

TEST_CASE("property: printed and exact propagators agree in magnitude; phases differ only on |e>") {
  auto g = holo::testing::rng(11);
  for (int n = 0; n < 1000; ++n) {
    const LambdaGateSpec spec(holo::testing::uniform(g, 0, kPi), holo::testing::uniform(g, 0, kTwoPi),
                              holo::testing::uniform(g, 0.2, 3.0));
    const SystematicError err{holo::testing::uniform(g, -0.3, 0.3), holo::testing::uniform(g, -0.2, 0.2),
                              holo::testing::uniform(g, -0.2, 0.2)};
    const Matrix printed = closed_form_propagator(spec, err);
    const Matrix exact = exact_propagator(spec, err).matrix();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(std::abs(printed(i, k)) - std::abs(exact(i, k))) <= 1e-10);
        if (i != kExcited && k != kExcited) CHECK(near(printed(i, k), exact(i, k), 1e-10));
      }
    CHECK(near(printed(2, 2), exact(2, 2), 1e-10));
  }
}

TEST_CASE("property: the qubit block loses unitarity as epsilon^2") {
  const LambdaGateSpec spec(1.0, 0.3);
  std::vector<double> eps, defect;
  for (double rel : log_grid(1e-3, 1e-2, 6)) {
    const auto u = exact_propagator(spec, {rel, 0, 0}).matrix();
    const double d = unitarity_defect(u.block(2));
    CHECK(d > 0.0);
    eps.push_back(rel);
    defect.push_back(d);
  }
  CHECK(loglog_slope(eps, defect) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("parallel_transport_defect") {
  CHECK(parallel_transport_defect(LambdaGateSpec(kPi / 2, 0.0), 50) <= 1e-10);
  CHECK(parallel_transport_defect(LambdaGateSpec(0.3, 2.1), 50) <= 1e-10);
  const LambdaGateSpec first(kPi / 2, 0.0);
  const LambdaGateSpec second(kPi / 2 + 0.2, 0.0);
  const std::array<PulseSegment, 2> segs{PulseSegment{first, first.duration() / 2},
                                         PulseSegment{second, second.duration() / 2}};
  CHECK(parallel_transport_defect(segs, 50) > 1e-3);
  CHECK_THROWS_AS(parallel_transport_defect(first, 1), ValidationError);
}

TEST_CASE("leakage and exact fidelity examples") {
  auto g = holo::testing::rng(12);
  const LambdaGateSpec any(0.9, 2.0);
  for (int n = 0; n < 50; ++n) {
    const auto in = holo::testing::random_input(g);
    CHECK(leakage(any, {}, in).leak_prob <= 1e-12);
    CHECK(state_fidelity_exact(any, {}, in) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const LambdaGateSpec flip(kPi, 0.0);
  const SystematicError err{0.01, 0, 0};
  CHECK(leakage(flip, err, {0.0, 0.0}).leak_prob == doctest::Approx(std::pow(std::sin(0.01 * kPi), 2)).epsilon(1e-12));
  CHECK(leakage(flip, err, {0.0, 0.0}).leak_prob == doctest::Approx(9.8663e-4).epsilon(1e-4));
  CHECK(state_fidelity_exact(flip, err, {0.0, 0.0}) == doctest::Approx(0.9990132).epsilon(1e-7));
  CHECK(state_fidelity_exact(flip, err, {0.0, 0.0}) ==
        doctest::Approx(std::pow(std::cos(0.01 * kPi), 2)).epsilon(1e-13));
}

TEST_CASE("property: the dark state is immune to pulse-area errors") {
  auto g = holo::testing::rng(13);
  for (int n = 0; n < 500; ++n) {
    const LambdaGateSpec spec(holo::testing::uniform(g, 0, kPi), holo::testing::uniform(g, 0, kTwoPi));
    const SystematicError err{holo::testing::uniform(g, -0.5, 0.5), 0, 0};
    const auto dark = dark_state_angles(spec);
    CHECK(state_fidelity_exact(spec, err, dark) >= 1.0 - 1e-12);
    CHECK(leakage(spec, err, dark).leak_prob <= 1e-12);
  }
}

TEST_CASE("property: pulse-area-only fidelity is [1 - (1 - cos eps) p]^2") {
  auto g = holo::testing::rng(14);
  for (int n = 0; n < 1000; ++n) {
    const LambdaGateSpec spec(holo::testing::uniform(g, 0, kPi), holo::testing::uniform(g, 0, kTwoPi));
    const double rel = holo::testing::uniform(g, -0.5, 0.5);
    const auto in = holo::testing::random_input(g);
    const auto basis = bright_dark_basis(spec, {});
    const StateVector psi = embed_qubit(state_from_bloch(in));
    const double p = std::norm(basis.bright_plus.dot(psi)) * 2.0;  // |<b|psi>|^2, b = (|+> + |->)/sqrt2 on the qubit part
    const double eps = kPi * rel;
    const double predicted = std::pow(1.0 - (1.0 - std::cos(eps)) * p, 2);
    CHECK(state_fidelity_exact(spec, {rel, 0, 0}, in) == doctest::Approx(predicted).epsilon(1e-10));
  }
}

TEST_CASE("state_fidelity_order2 examples") {
  const LambdaGateSpec spec(0.8, 0.3);
  CHECK(state_fidelity_order2(spec, {}, {1.0, 2.0}) == 1.0);
  CHECK(state_fidelity_order2(spec, {0, 0.01, 0}, {0.0, 0.0}) == doctest::Approx(1.0 - 1e-4).epsilon(1e-15));
  const LambdaGateSpec flip(kPi, 0.0);
  const double printed = state_fidelity_order2(flip, {0.01, 0, 0}, {kPi, 0.0});
  CHECK(printed == doctest::Approx(1.0 - std::pow(0.01 * kPi, 2)).epsilon(1e-15));
  CHECK(printed == doctest::Approx(1.0 - 9.8696e-4).epsilon(1e-7));
  // The exact propagator leaves |1> alone at theta = pi: it is the dark state.
  CHECK(state_fidelity_exact(flip, {0.01, 0, 0}, {kPi, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: per-state formula is O(delta^3) accurate for angle errors") {
  auto g = holo::testing::rng(15);
  for (int n = 0; n < 20; ++n) {
    const LambdaGateSpec spec(holo::testing::uniform(g, 0.2, kPi - 0.2), holo::testing::uniform(g, 0, kTwoPi));
    const auto in = holo::testing::random_input(g);
    for (int which = 0; which < 2; ++which) {
      std::vector<double> ds, resid;
      for (double d : log_grid(1e-3, 1e-2, 6)) {
        const SystematicError err = which == 0 ? SystematicError{0, d, 0} : SystematicError{0, 0, d};
        const Evaluator eval(spec, err);
        const double r = std::abs(eval.infidelity(in) - eval.infidelity_order2(in));
        ds.push_back(d);
        resid.push_back(std::max(r, 1e-300));
      }
      if (resid.back() > 1e-15) CHECK(loglog_slope(ds, resid) >= 2.9);
    }
  }
}

TEST_CASE("average_fidelity_order2 examples") {
  CHECK(average_fidelity_order2(1.2, {}) == 1.0);
  CHECK(average_fidelity_order2(kPi / 2, {0.01, 0, 0}) == doctest::Approx(0.99950652).epsilon(1e-8));
  CHECK(average_fidelity_order2(kPi / 2, {0.01, 0, 0}) ==
        doctest::Approx(1.0 - std::pow(0.01 * kPi, 2) * 0.5).epsilon(1e-15));
  CHECK(average_fidelity_order2(kPi / 4, {0, 0, 0.1}) == doctest::Approx(0.9975).epsilon(1e-14));
}

TEST_CASE("amplitude-ratio error mapping") {
  CHECK(dtheta_from_ratio_error(1.0, 0.01) == doctest::Approx(0.01));
  CHECK(dtheta_from_ratio_error(0.0, 0.01) == doctest::Approx(0.02));
  CHECK(dtheta_from_ratio_error(2.5, 0.0) == 0.0);
  CHECK(dtheta_from_ratio_error_at_theta(kPi / 2, 0.01) == doctest::Approx(0.01));
  CHECK_THROWS_AS(ratio_from_theta(kPi), DomainError);
  try {
    dtheta_from_ratio_error_at_theta(kPi, 0.01);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "ratio undefined, b = 0");
  }
  CHECK_THROWS_AS(dtheta_from_ratio_error(-1.0, 0.01), ValidationError);
}
