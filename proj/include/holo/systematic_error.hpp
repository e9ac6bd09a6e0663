#pragma once

#include "holo/qmath.hpp"

namespace holo {

// Constant deviations of the control parameters, held fixed over one gate.
struct SystematicError {
  double rel_omega = 0.0;  // dOmega / Omega
  double d_theta = 0.0;    // radians
  double d_phi = 0.0;      // radians

  // Above this |rel_omega| the second-order formulas are no longer meaningful.
  static constexpr double kPerturbativeLimit = 0.1;

  // Throws ValidationError on non-finite fields or |rel_omega| > 1.
  void validate() const;
  bool beyond_perturbative_regime() const;
  bool is_zero() const { return rel_omega == 0.0 && d_theta == 0.0 && d_phi == 0.0; }

  // Pulse-area error of the pi pulse, dOmega * T with Omega T = pi.
  double pulse_area_error() const { return kPi * rel_omega; }
};

}  // namespace holo
