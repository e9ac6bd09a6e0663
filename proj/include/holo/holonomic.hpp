#pragma once

// Lambda-type three-level holonomic gate. Basis order is {|0>, |1>, |e>}.

#include <array>
#include <cstddef>
#include <span>

#include "holo/qmath.hpp"
#include "holo/systematic_error.hpp"

namespace holo::holonomic {

inline constexpr std::size_t kExcited = 2;

class LambdaGateSpec {
public:
  // theta in [0, pi]; phi is wrapped to [0, 2pi); omega > 0.
  LambdaGateSpec(double theta, double phi, double omega = 1.0);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double omega() const { return omega_; }
  // Pi-pulse duration, pi / omega.
  double duration() const { return kPi / omega_; }

  // Coupling amplitudes: a = sin(theta/2) e^{i phi}, b = cos(theta/2).
  Complex a() const;
  Complex b() const;

private:
  double theta_;
  double phi_;
  double omega_;
};

struct LeakageRecord {
  BlochAngles input;
  double leak_prob = 0.0;
};

struct BrightDarkBasis {
  StateVector dark;
  StateVector bright_plus;
  StateVector bright_minus;
  // Energies of dark, bright_plus, bright_minus.
  std::array<double, 3> energies{};
};

// Hamiltonian with primed parameters Omega(1 + rel_omega), theta + d_theta, phi + d_phi.
HermitianMatrix lambda_hamiltonian(const LambdaGateSpec& spec, const SystematicError& err);

BrightDarkBasis bright_dark_basis(const LambdaGateSpec& spec, const SystematicError& err);

// Bloch angles of the nominal dark state b|0> - a|1>.
BlochAngles dark_state_angles(const LambdaGateSpec& spec);

// [[cos t, -sin t e^{-i phi}], [-sin t e^{i phi}, -cos t]].
UnitaryMatrix ideal_gate(double theta, double phi);

// exp(-i H' T) with T = pi / Omega, from the perturbed Hamiltonian.
UnitaryMatrix exact_propagator(const LambdaGateSpec& spec, const SystematicError& err);

// Reference closed-form perturbed propagator, kept verbatim:
// the holonomy with primed angles plus the pulse-area correction. Its |e> row
// and column carry e^{+i phi'} / e^{-i phi'} on the transposed entries relative
// to exact_propagator; magnitudes agree. Shares no code with exact_propagator.
Matrix closed_form_propagator(const LambdaGateSpec& spec, const SystematicError& err);

// A constant-Hamiltonian piece of a piecewise pulse.
struct PulseSegment {
  LambdaGateSpec spec;
  double duration;
};

// max over sample times t in [0, T] and j, k in {0, 1} of |<psi_k(t)| H(t) |psi_j(t)>|.
double parallel_transport_defect(const LambdaGateSpec& spec, std::size_t n_samples);
double parallel_transport_defect(std::span<const PulseSegment> segments, std::size_t n_samples);

LeakageRecord leakage(const LambdaGateSpec& spec, const SystematicError& err,
                      const BlochAngles& input);

double state_fidelity_exact(const LambdaGateSpec& spec, const SystematicError& err,
                            const BlochAngles& input);

// Second-order per-state fidelity, literal closed form (full-angle alpha in the
// pulse-area term). Not clamped to [0, 1].
double state_fidelity_order2(const LambdaGateSpec& spec, const SystematicError& err,
                             const BlochAngles& input);

// 1 - state_fidelity_order2, summed term by term.
double state_infidelity_order2(const LambdaGateSpec& spec, const SystematicError& err,
                               const BlochAngles& input);

// Closed-form Haar average of the second-order fidelity.
double average_fidelity_order2(double theta, const SystematicError& err);
double average_infidelity_order2(double theta, const SystematicError& err);

// r = |a / b| = tan(theta / 2). Throws DomainError at theta = pi.
double ratio_from_theta(double theta);
// Amplitude-ratio error mapped to a mixing-angle error: 2 dr / (1 + r^2).
double dtheta_from_ratio_error(double r, double dr);
double dtheta_from_ratio_error_at_theta(double theta, double dr);

// Ideal and perturbed propagators computed once, evaluated for many inputs.
class Evaluator {
public:
  Evaluator(const LambdaGateSpec& spec, const SystematicError& err);

  double fidelity(const BlochAngles& input) const { return 1.0 - infidelity(input); }
  double infidelity(const BlochAngles& input) const;
  double leakage(const BlochAngles& input) const;
  double infidelity_order2(const BlochAngles& input) const;

  const UnitaryMatrix& ideal() const { return ideal_; }
  const UnitaryMatrix& exact() const { return exact_; }

private:
  LambdaGateSpec spec_;
  SystematicError err_;
  UnitaryMatrix ideal_;
  UnitaryMatrix exact_;
};

}  // namespace holo::holonomic
