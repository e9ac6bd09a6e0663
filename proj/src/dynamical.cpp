#include "holo/dynamical.hpp"

#include <cmath>
#include <sstream>

#include "holo/errors.hpp"

namespace holo::dynamical {
namespace {

void require_single_field(const SystematicError& err) {
  err.validate();
  if (err.d_theta != 0.0) {
    throw ValidationError("amplitude-ratio error undefined for single-field gate (d_theta must be 0)");
  }
}

Matrix rotation(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex minus_i(0.0, -1.0);
  return Matrix(2, {c, minus_i * std::polar(s, -phi), minus_i * std::polar(s, phi), c});
}

}  // namespace

RabiGateSpec::RabiGateSpec(double theta, double phi, double omega)
    : theta_(theta), phi_(wrap_angle(phi)), omega_(omega) {
  if (!(theta > 0.0 && theta <= kPi)) {
    std::ostringstream msg;
    msg << "dynamical theta must lie in (0, pi], got " << theta;
    throw ValidationError(msg.str());
  }
  if (!(std::isfinite(omega) && omega > 0.0)) {
    std::ostringstream msg;
    msg << "Rabi frequency must be finite and > 0, got " << omega;
    throw ValidationError(msg.str());
  }
}

GateSequence::GateSequence(std::vector<RabiGateSpec> pulses) : pulses_(std::move(pulses)) {
  if (pulses_.empty()) throw ValidationError("gate sequence must not be empty");
}

HermitianMatrix rabi_hamiltonian(const RabiGateSpec& spec, const SystematicError& err) {
  require_single_field(err);
  const double omega = spec.omega() * (1.0 + err.rel_omega);
  const double phi = spec.phi() + err.d_phi;
  Matrix h(2);
  h(0, 1) = std::polar(omega, -phi);
  h(1, 0) = std::polar(omega, phi);
  return HermitianMatrix(h);
}

UnitaryMatrix ideal_gate(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ValidationError("angles must be finite");
  return UnitaryMatrix(rotation(theta, phi));
}

UnitaryMatrix perturbed_gate(const RabiGateSpec& spec, const SystematicError& err) {
  require_single_field(err);
  // theta' = (Omega + dOmega) tau = theta + theta * rel_omega
  return UnitaryMatrix(rotation(spec.theta() * (1.0 + err.rel_omega), spec.phi() + err.d_phi));
}

UnitaryMatrix compose(const GateSequence& seq, const SystematicError& err) {
  UnitaryMatrix total = perturbed_gate(seq.pulses().front(), err);
  for (std::size_t k = 1; k < seq.size(); ++k) total = perturbed_gate(seq.pulses()[k], err) * total;
  return total;
}

GateSequence named_rotation(RotationKind kind, double angle) {
  if (!(angle > 0.0 && angle < kPi)) {
    std::ostringstream msg;
    msg << "rotation angle must lie in (0, pi), got " << angle;
    throw ValidationError(msg.str());
  }
  if (kind == RotationKind::y_rotation) return GateSequence(RabiGateSpec(angle, 1.5 * kPi));
  return GateSequence(
      {RabiGateSpec(0.5 * kPi, 0.5 * angle), RabiGateSpec(0.5 * kPi, wrap_angle(-0.5 * angle))});
}

double state_fidelity_exact(const GateSequence& seq, const SystematicError& err,
                            const BlochAngles& input) {
  return Evaluator(seq, err).fidelity(input);
}

double state_fidelity_order2(const RabiGateSpec& spec, const SystematicError& err,
                             const BlochAngles& input) {
  return 1.0 - state_infidelity_order2(spec, err, input);
}

double state_infidelity_order2(const RabiGateSpec& spec, const SystematicError& err,
                               const BlochAngles& input) {
  require_single_field(err);
  state_from_bloch(input);  // range check
  const double theta = spec.theta();
  const double phi = spec.phi();
  const double al = input.alpha;
  const double be = input.beta;
  const double area = theta * err.rel_omega;  // dOmega tau
  const double dp = err.d_phi;

  const double s2t = std::sin(theta) * std::sin(theta);
  const double half_cross = 0.5 * std::sin(al) * std::sin(2.0 * theta) * std::sin(be - phi);
  const double cbp = std::cos(be - phi);
  const double plus = std::cos(al) * s2t + half_cross;
  const double minus = std::cos(al) * s2t - half_cross;

  return area * area * (1.0 - std::sin(al) * std::sin(al) * cbp * cbp) +
         dp * dp * (s2t - plus * plus) + 2.0 * dp * area * std::sin(al) * cbp * minus;
}

double average_fidelity_order2(double theta, const SystematicError& err) {
  return 1.0 - average_infidelity_order2(theta, err);
}

double average_infidelity_order2(double theta, const SystematicError& err) {
  require_single_field(err);
  if (!(theta > 0.0 && theta <= kPi)) throw ValidationError("dynamical theta must lie in (0, pi]");
  const double area = theta * err.rel_omega;
  const double s = std::sin(theta);
  const double s2 = std::sin(2.0 * theta);
  return 2.0 / 3.0 * area * area + err.d_phi * err.d_phi * (2.0 / 3.0 * s * s - s2 * s2 / 12.0);
}

Evaluator::Evaluator(const GateSequence& seq, const SystematicError& err)
    : seq_(seq),
      err_(err),
      ideal_(compose(seq, SystematicError{})),
      perturbed_(compose(seq, err)) {}

double Evaluator::infidelity(const BlochAngles& input) const {
  const StateVector in = state_from_bloch(input);
  return holo::infidelity(ideal_ * in, perturbed_ * in);
}

double Evaluator::infidelity_order2(const BlochAngles& input) const {
  if (seq_.size() != 1) throw ValidationError("second-order formula is defined for a single pulse");
  return state_infidelity_order2(seq_.pulses().front(), err_, input);
}

}  // namespace holo::dynamical
