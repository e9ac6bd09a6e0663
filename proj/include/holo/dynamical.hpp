#pragma once

// Resonantly driven two-level (dynamical) gate and its compositions.

#include <vector>

#include "holo/qmath.hpp"
#include "holo/systematic_error.hpp"

namespace holo::dynamical {

class RabiGateSpec {
public:
  // theta = Omega tau in (0, pi]; phi is wrapped to [0, 2pi); omega > 0.
  // Universal single-qubit sets only need theta <= pi/2, but evaluators accept the wider range.
  RabiGateSpec(double theta, double phi, double omega = 1.0);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  double omega() const { return omega_; }
  double duration() const { return theta_ / omega_; }

  bool operator==(const RabiGateSpec&) const = default;

private:
  double theta_;
  double phi_;
  double omega_;
};

// Pulses applied in order; one SystematicError is shared by every element.
class GateSequence {
public:
  explicit GateSequence(std::vector<RabiGateSpec> pulses);
  GateSequence(const RabiGateSpec& single) : GateSequence(std::vector<RabiGateSpec>{single}) {}

  const std::vector<RabiGateSpec>& pulses() const { return pulses_; }
  std::size_t size() const { return pulses_.size(); }

private:
  std::vector<RabiGateSpec> pulses_;
};

enum class RotationKind { y_rotation, z_rotation };

// Omega'(e^{-i phi'}|0><1| + h.c.). Throws ValidationError when err.d_theta != 0:
// a single drive field has no amplitude ratio to get wrong.
HermitianMatrix rabi_hamiltonian(const RabiGateSpec& spec, const SystematicError& err);

// [[cos t, -i e^{-i phi} sin t], [-i e^{i phi} sin t, cos t]]; any finite theta.
UnitaryMatrix ideal_gate(double theta, double phi);

// Ideal form at theta' = theta (1 + rel_omega), phi' = phi + d_phi. Exact, not perturbative.
UnitaryMatrix perturbed_gate(const RabiGateSpec& spec, const SystematicError& err);

// U_n ... U_2 U_1 for pulses [1, ..., n].
UnitaryMatrix compose(const GateSequence& seq, const SystematicError& err);

// y_rotation(angle) = exp(i angle sigma_y); z_rotation(angle) = -exp(i angle sigma_z).
// angle must lie in (0, pi).
GateSequence named_rotation(RotationKind kind, double angle);

double state_fidelity_exact(const GateSequence& seq, const SystematicError& err,
                            const BlochAngles& input);

// Literal second-order closed form; single pulse only.
double state_fidelity_order2(const RabiGateSpec& spec, const SystematicError& err,
                             const BlochAngles& input);

double state_infidelity_order2(const RabiGateSpec& spec, const SystematicError& err,
                               const BlochAngles& input);

double average_fidelity_order2(double theta, const SystematicError& err);
double average_infidelity_order2(double theta, const SystematicError& err);

class Evaluator {
public:
  Evaluator(const GateSequence& seq, const SystematicError& err);

  double fidelity(const BlochAngles& input) const { return 1.0 - infidelity(input); }
  double infidelity(const BlochAngles& input) const;
  // Only defined for a single-pulse sequence.
  double infidelity_order2(const BlochAngles& input) const;

  const UnitaryMatrix& ideal() const { return ideal_; }
  const UnitaryMatrix& perturbed() const { return perturbed_; }

private:
  GateSequence seq_;
  SystematicError err_;
  UnitaryMatrix ideal_;
  UnitaryMatrix perturbed_;
};

}  // namespace holo::dynamical
