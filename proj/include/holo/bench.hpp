#pragma once

// Haar averaging over pure qubit inputs, parameter sweeps, residual-scaling
// fits and the adjudication of the second-order closed forms against the
// exact propagators.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holo/qmath.hpp"
#include "holo/systematic_error.hpp"

namespace holo::bench {

enum class GateKind { geometric, dynamical };
enum class AverageMethod { quadrature, monte_carlo };
enum class SweepAxis { theta, rel_omega, d_theta, d_phi };
enum class ErrorTerm { geometric_omega, geometric_theta, geometric_phi, dynamical_omega, dynamical_phi };
enum class Verdict { consistent, discrepant };

std::string_view to_string(GateKind kind);
std::string_view to_string(AverageMethod method);
std::string_view to_string(SweepAxis axis);
std::string_view to_string(ErrorTerm term);
std::string_view to_string(Verdict verdict);
// Inverse of to_string; throw ValidationError on unknown names.
GateKind parse_gate_kind(std::string_view name);
AverageMethod parse_average_method(std::string_view name);
SweepAxis parse_sweep_axis(std::string_view name);

struct GateParams {
  GateKind kind = GateKind::geometric;
  double theta = kPi / 2.0;
  double phi = 0.0;
  double omega = 1.0;
};

struct AverageConfig {
  AverageMethod method = AverageMethod::quadrature;
  std::size_t nodes_alpha = 64;
  std::size_t nodes_beta = 64;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AverageResult {
  double mean = 1.0;        // exact average fidelity
  double std_error = 0.0;   // Monte Carlo only
  double infidelity = 0.0;  // 1 - mean, accumulated directly
  double leakage = 0.0;     // geometric only
};

// Worker threads; 0 picks the hardware concurrency. Results never depend on it.
struct Execution {
  unsigned threads = 0;
  unsigned resolved() const;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(std::size_t n);

// Counter-based uniform stream: value (seed, index) is a pure function of both,
// so sample i is identical no matter which thread draws it.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  // Uniform in [0, 1).
  double uniform(std::uint64_t counter) const;

private:
  std::uint64_t seed_;
};

// alpha = arccos(1 - 2u), beta = 2 pi v.
BlochAngles haar_qubit_sample(double u, double v);
// Sample `index` of the Haar stream for `seed`.
BlochAngles haar_qubit_sample(const CounterRng& rng, std::uint64_t index);

AverageResult average_fidelity_numeric(const GateParams& params, const SystematicError& err,
                                       const AverageConfig& cfg, Execution exec = {});

// Closed-form averaged second-order fidelity for the gate family.
double closed_form_average_fidelity(const GateParams& params, const SystematicError& err);
double closed_form_average_infidelity(const GateParams& params, const SystematicError& err);

struct SweepPlan {
  GateParams params;
  SystematicError err;
  SweepAxis axis = SweepAxis::rel_omega;
  std::vector<double> grid;
  AverageConfig averaging;

  void validate() const;
};

struct SweepRow {
  double axis = 0.0;
  double exact_avg = 1.0;
  double formula_avg = 1.0;
  double leakage_avg = 0.0;
  double mc_std_error = 0.0;

  bool operator==(const SweepRow&) const = default;
};

std::vector<SweepRow> sweep(const SweepPlan& plan, Execution exec = {});

struct ScalingWindow {
  double lo = 1e-3;
  double hi = 1e-2;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  ScalingWindow window;
  std::size_t n_points = 0;
  // Residuals at or below rounding level: the closed form is exact and the slope undefined.
  bool exact_match = false;
};

// Least-squares slope of log|exact - closed form| against log(delta) for
// one active error channel. delta is the channel's natural variable
// (rel_omega for the pulse-area terms, radians otherwise).
ScalingFit residual_scaling(ErrorTerm term, double theta, ScalingWindow window = {},
                            std::size_t n_points = 6, const AverageConfig& cfg = {});

struct AdjudicationOptions {
  double delta = 1e-3;          // Richardson step; also uses delta / 2
  double rel_tolerance = 0.01;  // coefficient agreement threshold
  ScalingWindow window;
  std::size_t n_points = 6;
  AverageConfig averaging;
};

// Second-order infidelity coefficients of one error term at one theta. Units:
// geometric pulse-area term per (pi dOmega/Omega)^2, dynamical pulse-area term
// per (dOmega/Omega)^2, angle terms per rad^2.
struct TermAdjudication {
  ErrorTerm term = ErrorTerm::geometric_omega;
  double theta = 0.0;
  double closed_form_coefficient = 0.0;    // from the averaged closed form
  double formula_quadrature = 0.0;   // quadrature of the per-state closed form
  double exact_coefficient = 0.0;    // Richardson extrapolation of the exact average
  ScalingFit residual;
  Verdict verdict = Verdict::consistent;            // averaged closed form vs exact
  Verdict per_state_verdict = Verdict::consistent;  // per-state closed form vs exact
};

struct AdjudicationReport {
  std::vector<TermAdjudication> entries;

  const TermAdjudication& find(ErrorTerm term, double theta) const;
};

AdjudicationReport adjudicate_formulas(const std::vector<double>& theta_grid,
                                       const AdjudicationOptions& options = {});

// Exact second-order coefficient of one term (same units as TermAdjudication).
double exact_coefficient(ErrorTerm term, double theta, double delta, const AverageConfig& cfg);

struct ComparisonRow {
  double theta = 0.0;
  double geometric_formula = 0.0;   // averaged infidelity, closed form
  double dynamical_formula = 0.0;
  double formula_ratio = 0.0;       // dynamical / geometric
  double geometric_exact = 0.0;     // averaged infidelity, exact propagators
  double dynamical_exact = 0.0;
  double exact_ratio = 0.0;
  double duration_ratio = 0.0;      // tau / T = theta / pi
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  // max over theta <= pi/2 of the dynamical pulse-area infidelity divided by
  // the min over the grid of the geometric one (closed forms).
  double half_ratio_check = 0.0;
  // geometric / dynamical pulse-area infidelity at theta = pi/4 (closed forms).
  double hadamard_ratio = 0.0;
};

ComparisonReport compare_gates(const std::vector<double>& theta_grid, const SystematicError& err,
                               const AverageConfig& cfg = {}, Execution exec = {});

std::vector<double> default_adjudication_grid();
std::vector<double> default_comparison_grid();

}  // namespace holo::bench
