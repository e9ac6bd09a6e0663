#include "holo/holonomic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

void SystematicError::validate() const {
  if (!std::isfinite(rel_omega) || !std::isfinite(d_theta) || !std::isfinite(d_phi)) {
    throw ValidationError("systematic error components must be finite");
  }
  if (std::abs(rel_omega) > 1.0) {
    std::ostringstream msg;
    msg << "|dOmega/Omega| must not exceed 1, got " << rel_omega;
    throw ValidationError(msg.str());
  }
}

bool SystematicError::beyond_perturbative_regime() const {
  return std::abs(rel_omega) > kPerturbativeLimit;
}

namespace holonomic {
namespace {

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    std::ostringstream msg;
    msg << "theta must lie in [0, pi], got " << theta;
    throw ValidationError(msg.str());
  }
}

StateVector qubit_input(const BlochAngles& input) { return embed_qubit(state_from_bloch(input)); }

}  // namespace

LambdaGateSpec::LambdaGateSpec(double theta, double phi, double omega)
    : theta_(theta), phi_(wrap_angle(phi)), omega_(omega) {
  require_theta(theta);
  if (!(std::isfinite(omega) && omega > 0.0)) {
    std::ostringstream msg;
    msg << "Rabi frequency must be finite and > 0, got " << omega;
    throw ValidationError(msg.str());
  }
}

Complex LambdaGateSpec::a() const { return std::sin(0.5 * theta_) * std::polar(1.0, phi_); }
Complex LambdaGateSpec::b() const { return Complex(std::cos(0.5 * theta_)); }

HermitianMatrix lambda_hamiltonian(const LambdaGateSpec& spec, const SystematicError& err) {
  err.validate();
  const double omega = spec.omega() * (1.0 + err.rel_omega);
  const double theta = spec.theta() + err.d_theta;
  const double phi = spec.phi() + err.d_phi;
  const Complex to_zero = omega * std::sin(0.5 * theta) * std::polar(1.0, phi);
  const Complex to_one = omega * std::cos(0.5 * theta);

  Matrix h(3);
  h(kExcited, 0) = to_zero;
  h(kExcited, 1) = to_one;
  h(0, kExcited) = std::conj(to_zero);
  h(1, kExcited) = std::conj(to_one);
  return HermitianMatrix(h);
}

BrightDarkBasis bright_dark_basis(const LambdaGateSpec& spec, const SystematicError& err) {
  err.validate();
  const double omega = spec.omega() * (1.0 + err.rel_omega);
  const double theta = spec.theta() + err.d_theta;
  const double phi = spec.phi() + err.d_phi;
  const Complex a = std::sin(0.5 * theta) * std::polar(1.0, phi);
  const Complex b = std::cos(0.5 * theta);
  const double r = 1.0 / std::sqrt(2.0);

  return BrightDarkBasis{
      .dark = StateVector::normalized({b, -a, Complex{}}),
      .bright_plus = StateVector::normalized({r * std::conj(a), r * std::conj(b), Complex(r)}),
      .bright_minus = StateVector::normalized({r * std::conj(a), r * std::conj(b), Complex(-r)}),
      .energies = {0.0, omega, -omega},
  };
}

BlochAngles dark_state_angles(const LambdaGateSpec& spec) {
  // b|0> - a|1> = cos(t/2)|0> + sin(t/2) e^{i(phi + pi)}|1>
  return BlochAngles{spec.theta(), wrap_angle(spec.phi() + kPi)};
}

UnitaryMatrix ideal_gate(double theta, double phi) {
  require_theta(theta);
  if (!std::isfinite(phi)) throw ValidationError("phi must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return UnitaryMatrix(Matrix(2, {c, -s * std::polar(1.0, -phi), -s * std::polar(1.0, phi), -c}));
}

UnitaryMatrix exact_propagator(const LambdaGateSpec& spec, const SystematicError& err) {
  return expm_unitary(lambda_hamiltonian(spec, err), spec.duration());
}

Matrix closed_form_propagator(const LambdaGateSpec& spec, const SystematicError& err) {
  err.validate();
  const double tp = spec.theta() + err.d_theta;
  const double pp = spec.phi() + err.d_phi;
  const double eps = kPi * err.rel_omega;
  const Complex i(0.0, 1.0);
  const Complex up = std::exp(i * pp);
  const Complex down = std::exp(-i * pp);

  const Matrix holonomy(3, {std::cos(tp), -down * std::sin(tp), 0.0,  //
                            -up * std::sin(tp), -std::cos(tp), 0.0,   //
                            0.0, 0.0, 0.0});

  const double one_minus_cos = 1.0 - std::cos(eps);
  const double sin_eps = std::sin(eps);
  const double sh = std::sin(tp / 2.0);
  const double ch = std::cos(tp / 2.0);
  const Matrix correction(
      3, {one_minus_cos * sh * sh, 0.5 * one_minus_cos * std::sin(tp) * down, i * sin_eps * sh * up,
          0.5 * one_minus_cos * std::sin(tp) * up, one_minus_cos * ch * ch, i * sin_eps * ch,
          i * sin_eps * sh * down, i * sin_eps * ch, -std::cos(eps)});

  return holonomy + correction;
}

double parallel_transport_defect(const LambdaGateSpec& spec, std::size_t n_samples) {
  const PulseSegment whole{spec, spec.duration()};
  return parallel_transport_defect(std::span<const PulseSegment>(&whole, 1), n_samples);
}

double parallel_transport_defect(std::span<const PulseSegment> segments, std::size_t n_samples) {
  if (segments.empty()) throw ValidationError("pulse needs at least one segment");
  if (n_samples < 2) throw ValidationError("need at least 2 time samples");

  std::vector<HermitianMatrix> hamiltonians;
  std::vector<UnitaryMatrix> start_propagators;  // propagator at the start of each segment
  std::vector<double> starts;
  UnitaryMatrix accumulated(Matrix::identity(3));
  double total = 0.0;
  for (const auto& seg : segments) {
    if (!(std::isfinite(seg.duration) && seg.duration > 0.0)) {
      throw ValidationError("segment duration must be finite and > 0");
    }
    hamiltonians.push_back(lambda_hamiltonian(seg.spec, SystematicError{}));
    start_propagators.push_back(accumulated);
    starts.push_back(total);
    accumulated = expm_unitary(hamiltonians.back(), seg.duration) * accumulated;
    total += seg.duration;
  }

  double worst = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double t = total * static_cast<double>(s) / static_cast<double>(n_samples - 1);
    std::size_t seg = 0;
    while (seg + 1 < segments.size() && t >= starts[seg + 1]) ++seg;
    const double local = std::max(0.0, t - starts[seg]);
    const UnitaryMatrix u = expm_unitary(hamiltonians[seg], local) * start_propagators[seg];

    const std::array<StateVector, 2> evolved{u * StateVector::basis(3, 0),
                                             u * StateVector::basis(3, 1)};
    for (const auto& bra : evolved)
      for (const auto& ket : evolved)
        worst = std::max(worst, std::abs(matrix_element(bra, hamiltonians[seg].matrix(), ket)));
  }
  return worst;
}

LeakageRecord leakage(const LambdaGateSpec& spec, const SystematicError& err,
                      const BlochAngles& input) {
  return LeakageRecord{input, Evaluator(spec, err).leakage(input)};
}

double state_fidelity_exact(const LambdaGateSpec& spec, const SystematicError& err,
                            const BlochAngles& input) {
  return Evaluator(spec, err).fidelity(input);
}

double state_fidelity_order2(const LambdaGateSpec& spec, const SystematicError& err,
                             const BlochAngles& input) {
  return 1.0 - state_infidelity_order2(spec, err, input);
}

double state_infidelity_order2(const LambdaGateSpec& spec, const SystematicError& err,
                               const BlochAngles& input) {
  err.validate();
  state_from_bloch(input);  // range check
  const double theta = spec.theta();
  const double phi = spec.phi();
  const double al = input.alpha;
  const double be = input.beta;
  const double dt = err.d_theta;
  const double dp = err.d_phi;
  const double eps = kPi * err.rel_omega;

  const double s2t = std::sin(theta) * std::sin(theta);
  const double mix = std::cos(al) * s2t + 0.5 * std::sin(al) * std::sin(2.0 * theta) * std::cos(be - phi);
  const double sbp = std::sin(be - phi);
  const Complex overlap = std::cos(al) * std::sin(theta / 2.0) * std::polar(1.0, phi) +
                          std::sin(al) * std::cos(theta / 2.0) * std::polar(1.0, be);

  return dt * dt * (1.0 - std::sin(al) * std::sin(al) * sbp * sbp) + dp * dp * (s2t - mix * mix) +
         2.0 * dt * dp * std::sin(al) * sbp * mix + eps * eps * std::norm(overlap);
}

double average_fidelity_order2(double theta, const SystematicError& err) {
  return 1.0 - average_infidelity_order2(theta, err);
}

double average_infidelity_order2(double theta, const SystematicError& err) {
  err.validate();
  require_theta(theta);
  const double eps = kPi * err.rel_omega;
  const double ch = std::cos(theta / 2.0);
  const double s = std::sin(theta);
  const double s2 = std::sin(2.0 * theta);
  return eps * eps * (1.0 + ch * ch) / 3.0 + 2.0 / 3.0 * err.d_theta * err.d_theta +
         err.d_phi * err.d_phi * (2.0 / 3.0 * s * s - s2 * s2 / 12.0);
}

double ratio_from_theta(double theta) {
  require_theta(theta);
  if (theta == kPi) throw DomainError("ratio undefined, b = 0");
  return std::tan(0.5 * theta);
}

double dtheta_from_ratio_error(double r, double dr) {
  if (!(std::isfinite(r) && r >= 0.0) || !std::isfinite(dr)) {
    throw ValidationError("ratio must be finite and >= 0 and its error finite");
  }
  return 2.0 * dr / (1.0 + r * r);
}

double dtheta_from_ratio_error_at_theta(double theta, double dr) {
  return dtheta_from_ratio_error(ratio_from_theta(theta), dr);
}

Evaluator::Evaluator(const LambdaGateSpec& spec, const SystematicError& err)
    : spec_(spec),
      err_(err),
      ideal_(ideal_gate(spec.theta(), spec.phi())),
      exact_(exact_propagator(spec, err)) {}

double Evaluator::infidelity(const BlochAngles& input) const {
  const StateVector in = state_from_bloch(input);
  return holo::infidelity(embed_qubit(ideal_ * in), exact_ * embed_qubit(in));
}

double Evaluator::leakage(const BlochAngles& input) const {
  const StateVector out = exact_ * qubit_input(input);
  return std::min(1.0, std::norm(out[kExcited]));
}

double Evaluator::infidelity_order2(const BlochAngles& input) const {
  return state_infidelity_order2(spec_, err_, input);
}

}  // namespace holonomic
}  // namespace holo
