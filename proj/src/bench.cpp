#include "holo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "holo/dynamical.hpp"
#include "holo/errors.hpp"
#include "holo/holonomic.hpp"

namespace holo::bench {
namespace {

constexpr double kExactMatchResidual = 1e-14;
constexpr double kCoefficientReference = 0.1;
constexpr std::size_t kMonteCarloBlock = 8192;

// Runs body(i) for i in [0, n) on up to `threads` workers. If any call throws,
// the exception from the smallest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
}

// Gate under test with the exact and closed-form per-state evaluators.
class GateModel {
public:
  GateModel(const GateParams& params, const SystematicError& err) {
    if (params.kind == GateKind::geometric) {
      geometric_.emplace(holonomic::LambdaGateSpec(params.theta, params.phi, params.omega), err);
    } else {
      dynamical_.emplace(
          dynamical::GateSequence(dynamical::RabiGateSpec(params.theta, params.phi, params.omega)),
          err);
    }
  }

  double infidelity(const BlochAngles& b) const {
    return geometric_ ? geometric_->infidelity(b) : dynamical_->infidelity(b);
  }
  double leakage(const BlochAngles& b) const { return geometric_ ? geometric_->leakage(b) : 0.0; }
  double infidelity_order2(const BlochAngles& b) const {
    return geometric_ ? geometric_->infidelity_order2(b) : dynamical_->infidelity_order2(b);
  }

private:
  std::optional<holonomic::Evaluator> geometric_;
  std::optional<dynamical::Evaluator> dynamical_;
};

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double leakage_sum = 0.0;

  void add(double x, double leak) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
    leakage_sum += leak;
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
    leakage_sum += other.leakage_sum;
  }
};

// Quadrature over the Haar measure: Gauss-Legendre in cos(alpha), uniform in beta.
template <class Integrand>
double quadrature(const AverageConfig& cfg, Integrand f) {
  const GaussLegendre gl = gauss_legendre(cfg.nodes_alpha);
  double total = 0.0;
  for (std::size_t i = 0; i < cfg.nodes_alpha; ++i) {
    const double alpha = std::acos(std::clamp(gl.nodes[i], -1.0, 1.0));
    double ring = 0.0;
    for (std::size_t j = 0; j < cfg.nodes_beta; ++j) {
      const double beta = kTwoPi * static_cast<double>(j) / static_cast<double>(cfg.nodes_beta);
      ring += f(BlochAngles{alpha, beta});
    }
    total += 0.5 * gl.weights[i] * ring / static_cast<double>(cfg.nodes_beta);
  }
  return total;
}

AverageConfig require_quadrature(const AverageConfig& cfg) {
  AverageConfig q = cfg;
  q.method = AverageMethod::quadrature;
  q.validate();
  return q;
}

GateParams term_gate(ErrorTerm term, double theta) {
  const bool geometric = term == ErrorTerm::geometric_omega || term == ErrorTerm::geometric_theta ||
                         term == ErrorTerm::geometric_phi;
  return GateParams{geometric ? GateKind::geometric : GateKind::dynamical, theta, 0.0, 1.0};
}

// Error with one channel active, in the coefficient's variable: pi dOmega/Omega for the
// geometric pulse-area term, dOmega/Omega for the dynamical one, radians otherwise.
SystematicError term_error(ErrorTerm term, double x) {
  SystematicError err;
  switch (term) {
    case ErrorTerm::geometric_omega: err.rel_omega = x / kPi; break;
    case ErrorTerm::dynamical_omega: err.rel_omega = x; break;
    case ErrorTerm::geometric_theta: err.d_theta = x; break;
    case ErrorTerm::geometric_phi:
    case ErrorTerm::dynamical_phi: err.d_phi = x; break;
  }
  return err;
}

// The residual-scaling variable is dOmega/Omega for both pulse-area terms.
double scaling_to_coefficient_variable(ErrorTerm term, double delta) {
  return term == ErrorTerm::geometric_omega ? kPi * delta : delta;
}

double exact_average_infidelity(const GateParams& params, const SystematicError& err,
                                const AverageConfig& cfg) {
  const GateModel model(params, err);
  return quadrature(cfg, [&](const BlochAngles& b) { return model.infidelity(b); });
}

bool agrees(double reference, double value, double rel_tolerance) {
  return std::abs(reference - value) <=
         rel_tolerance * std::max(std::abs(reference), std::abs(value)) + 1e-9;
}

void check_row_invariants(const SweepRow& row) {
  if (!(row.exact_avg >= 0.0 && row.exact_avg <= 1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "invariant violated: exact average fidelity " << row.exact_avg << " outside [0, 1]";
    throw NumericError(msg.str());
  }
  if (!(row.leakage_avg >= 0.0 && row.leakage_avg <= 1.0)) {
    std::ostringstream msg;
    msg << "invariant violated: average leakage " << row.leakage_avg << " outside [0, 1]";
    throw NumericError(msg.str());
  }
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(context + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + e.what());
  } catch (const NumericError& e) {
    throw NumericError(context + e.what());
  } catch (const std::exception& e) {
    throw NumericError(context + e.what());
  }
}

}  // namespace

std::string_view to_string(GateKind kind) {
  return kind == GateKind::geometric ? "geometric" : "dynamical";
}

std::string_view to_string(AverageMethod method) {
  return method == AverageMethod::quadrature ? "quadrature" : "monte_carlo";
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::theta: return "theta";
    case SweepAxis::rel_omega: return "rel_omega";
    case SweepAxis::d_theta: return "d_theta";
    case SweepAxis::d_phi: return "d_phi";
  }
  return "?";
}

std::string_view to_string(ErrorTerm term) {
  switch (term) {
    case ErrorTerm::geometric_omega: return "geometric_omega";
    case ErrorTerm::geometric_theta: return "geometric_theta";
    case ErrorTerm::geometric_phi: return "geometric_phi";
    case ErrorTerm::dynamical_omega: return "dynamical_omega";
    case ErrorTerm::dynamical_phi: return "dynamical_phi";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::consistent ? "consistent" : "discrepant";
}

GateKind parse_gate_kind(std::string_view name) {
  if (name == "geometric") return GateKind::geometric;
  if (name == "dynamical") return GateKind::dynamical;
  throw ValidationError("unknown gate kind '" + std::string(name) + "'");
}

AverageMethod parse_average_method(std::string_view name) {
  if (name == "quadrature") return AverageMethod::quadrature;
  if (name == "monte_carlo" || name == "mc") return AverageMethod::monte_carlo;
  throw ValidationError("unknown averaging method '" + std::string(name) + "'");
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto axis : {SweepAxis::theta, SweepAxis::rel_omega, SweepAxis::d_theta, SweepAxis::d_phi})
    if (name == to_string(axis)) return axis;
  throw ValidationError("unknown sweep axis '" + std::string(name) + "'");
}

void AverageConfig::validate() const {
  if (method == AverageMethod::quadrature) {
    if (nodes_alpha < 4 || nodes_beta < 4) throw ValidationError("quadrature needs at least 4 nodes per angle");
  } else if (samples < 4) {
    throw ValidationError("Monte Carlo averaging needs at least 4 samples");
  }
}

unsigned Execution::resolved() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

GaussLegendre gauss_legendre(std::size_t n) {
  if (n == 0) throw ValidationError("Gauss-Legendre order must be positive");
  GaussLegendre gl{std::vector<double>(n), std::vector<double>(n)};
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      derivative = nd * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

double CounterRng::uniform(std::uint64_t counter) const {
  // Two SplitMix64 finalizer rounds over (seed, counter).
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  const std::uint64_t bits = mix(seed_ ^ mix(counter));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

BlochAngles haar_qubit_sample(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v < 1.0)) {
    throw ValidationError("Haar sample coordinates must satisfy u in [0, 1], v in [0, 1)");
  }
  return BlochAngles{std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0)), kTwoPi * v};
}

BlochAngles haar_qubit_sample(const CounterRng& rng, std::uint64_t index) {
  BlochAngles b = haar_qubit_sample(rng.uniform(2 * index), rng.uniform(2 * index + 1));
  if (b.beta >= kTwoPi) b.beta = 0.0;
  return b;
}

AverageResult average_fidelity_numeric(const GateParams& params, const SystematicError& err,
                                       const AverageConfig& cfg, Execution exec) {
  cfg.validate();
  const GateModel model(params, err);
  AverageResult result;

  if (cfg.method == AverageMethod::quadrature) {
    result.infidelity = quadrature(cfg, [&](const BlochAngles& b) { return model.infidelity(b); });
    if (params.kind == GateKind::geometric) {
      result.leakage = quadrature(cfg, [&](const BlochAngles& b) { return model.leakage(b); });
    }
  } else {
    const CounterRng rng(cfg.seed);
    const std::size_t blocks = (cfg.samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<Moments> partial(blocks);
    parallel_for(blocks, exec.resolved(), [&](std::size_t block) {
      const std::size_t begin = block * kMonteCarloBlock;
      const std::size_t end = std::min(cfg.samples, begin + kMonteCarloBlock);
      Moments m;
      for (std::size_t i = begin; i < end; ++i) {
        const BlochAngles b = haar_qubit_sample(rng, i);
        m.add(model.infidelity(b), model.leakage(b));
      }
      partial[block] = m;
    });
    Moments total;
    for (const auto& m : partial) total.merge(m);
    const auto n = static_cast<double>(total.count);
    result.infidelity = total.mean;
    result.std_error = std::sqrt(total.m2 / (n - 1.0) / n);
    result.leakage = total.leakage_sum / n;
  }
  result.mean = 1.0 - result.infidelity;
  return result;
}

double closed_form_average_infidelity(const GateParams& params, const SystematicError& err) {
  return params.kind == GateKind::geometric ? holonomic::average_infidelity_order2(params.theta, err)
                                            : dynamical::average_infidelity_order2(params.theta, err);
}

double closed_form_average_fidelity(const GateParams& params, const SystematicError& err) {
  return 1.0 - closed_form_average_infidelity(params, err);
}

void SweepPlan::validate() const {
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError("sweep grid values must be finite");
  }
  if (grid.size() > 1) {
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
        throw ValidationError("sweep grid must be strictly monotone");
      }
    }
  }
  if (params.kind == GateKind::dynamical && axis == SweepAxis::d_theta) {
    throw ValidationError("axis d_theta is not defined for the dynamical gate");
  }
  averaging.validate();
  err.validate();
}

std::vector<SweepRow> sweep(const SweepPlan& plan, Execution exec) {
  plan.validate();
  std::vector<SweepRow> rows(plan.grid.size());
  parallel_for(plan.grid.size(), exec.resolved(), [&](std::size_t i) {
    const double value = plan.grid[i];
    try {
      GateParams params = plan.params;
      SystematicError err = plan.err;
      switch (plan.axis) {
        case SweepAxis::theta: params.theta = value; break;
        case SweepAxis::rel_omega: err.rel_omega = value; break;
        case SweepAxis::d_theta: err.d_theta = value; break;
        case SweepAxis::d_phi: err.d_phi = value; break;
      }
      // Monte Carlo points run serially: the grid is already spread over workers.
      const AverageResult avg = average_fidelity_numeric(params, err, plan.averaging, Execution{1});
      SweepRow row{value, avg.mean, closed_form_average_fidelity(params, err), avg.leakage, avg.std_error};
      check_row_invariants(row);
      rows[i] = row;
    } catch (...) {
      std::ostringstream context;
      context << "sweep point " << to_string(plan.axis) << " = " << value << ": ";
      rethrow_with_context(context.str());
    }
  });
  return rows;
}

ScalingFit residual_scaling(ErrorTerm term, double theta, ScalingWindow window,
                            std::size_t n_points, const AverageConfig& cfg) {
  if (!(window.lo >= 1e-4 && window.hi <= 5e-2 && window.lo < window.hi)) {
    throw ValidationError("scaling window must satisfy 1e-4 <= lo < hi <= 5e-2");
  }
  if (n_points < 5) throw ValidationError("scaling fit needs at least 5 points");
  const AverageConfig q = require_quadrature(cfg);
  const GateParams params = term_gate(term, theta);

  ScalingFit fit;
  fit.window = window;
  fit.n_points = n_points;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < n_points; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(n_points - 1);
    const double delta = window.lo * std::pow(window.hi / window.lo, frac);
    const SystematicError err = term_error(term, scaling_to_coefficient_variable(term, delta));
    const double residual =
        std::abs(exact_average_infidelity(params, err, q) - closed_form_average_infidelity(params, err));
    if (residual <= kExactMatchResidual) {
      fit.exact_match = true;
      fit.slope = std::numeric_limits<double>::quiet_NaN();
      fit.intercept = std::numeric_limits<double>::quiet_NaN();
      fit.r_squared = std::numeric_limits<double>::quiet_NaN();
      return fit;
    }
    xs.push_back(std::log(delta));
    ys.push_back(std::log(residual));
  }

  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k], my += ys[k];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return fit;
}

double exact_coefficient(ErrorTerm term, double theta, double delta, const AverageConfig& cfg) {
  if (!(delta > 0.0 && delta <= 0.1)) throw ValidationError("Richardson step must lie in (0, 0.1]");
  const AverageConfig q = require_quadrature(cfg);
  const GateParams params = term_gate(term, theta);
  auto scaled = [&](double x) {
    return exact_average_infidelity(params, term_error(term, x), q) / (x * x);
  };
  // c(x) = c0 + c1 x^2 + ...; eliminate the x^2 term.
  return (4.0 * scaled(0.5 * delta) - scaled(delta)) / 3.0;
}

const TermAdjudication& AdjudicationReport::find(ErrorTerm term, double theta) const {
  for (const auto& e : entries)
    if (e.term == term && std::abs(e.theta - theta) < 1e-12) return e;
  throw ValidationError("no adjudication entry for " + std::string(to_string(term)));
}

AdjudicationReport adjudicate_formulas(const std::vector<double>& theta_grid,
                                       const AdjudicationOptions& options) {
  if (theta_grid.empty()) throw ValidationError("adjudication grid must not be empty");
  for (double theta : theta_grid) {
    if (!(theta > 0.0 && theta <= kPi)) throw ValidationError("adjudication grid must lie in (0, pi]");
  }
  const AverageConfig q = require_quadrature(options.averaging);

  AdjudicationReport report;
  for (ErrorTerm term : {ErrorTerm::geometric_omega, ErrorTerm::geometric_theta,
                         ErrorTerm::geometric_phi, ErrorTerm::dynamical_omega,
                         ErrorTerm::dynamical_phi}) {
    for (double theta : theta_grid) {
      const GateParams params = term_gate(term, theta);
      const SystematicError unit = term_error(term, kCoefficientReference);
      const double ref2 = kCoefficientReference * kCoefficientReference;

      TermAdjudication entry;
      entry.term = term;
      entry.theta = theta;
      entry.closed_form_coefficient = closed_form_average_infidelity(params, unit) / ref2;
      const GateModel model(params, unit);
      entry.formula_quadrature =
          quadrature(q, [&](const BlochAngles& b) { return model.infidelity_order2(b); }) / ref2;
      entry.exact_coefficient = exact_coefficient(term, theta, options.delta, q);
      entry.residual = residual_scaling(term, theta, options.window, options.n_points, q);
      entry.verdict = agrees(entry.exact_coefficient, entry.closed_form_coefficient, options.rel_tolerance)
                          ? Verdict::consistent
                          : Verdict::discrepant;
      entry.per_state_verdict =
          agrees(entry.exact_coefficient, entry.formula_quadrature, options.rel_tolerance)
              ? Verdict::consistent
              : Verdict::discrepant;
      report.entries.push_back(entry);
    }
  }
  return report;
}

ComparisonReport compare_gates(const std::vector<double>& theta_grid, const SystematicError& err,
                               const AverageConfig& cfg, Execution exec) {
  err.validate();
  if (theta_grid.empty()) throw ValidationError("comparison grid must not be empty");
  for (double theta : theta_grid) {
    if (!(theta > 0.0 && theta <= kPi)) throw ValidationError("comparison grid must lie in (0, pi]");
  }
  if (err.rel_omega == 0.0) throw DomainError("comparison needs a nonzero dOmega/Omega");
  cfg.validate();

  // The single-field gate has no amplitude-ratio error.
  SystematicError dyn_err = err;
  dyn_err.d_theta = 0.0;
  SystematicError omega_only;
  omega_only.rel_omega = err.rel_omega;

  ComparisonReport report;
  report.rows.resize(theta_grid.size());
  parallel_for(theta_grid.size(), exec.resolved(), [&](std::size_t i) {
    const double theta = theta_grid[i];
    const GateParams geo{GateKind::geometric, theta, 0.0, 1.0};
    const GateParams dyn{GateKind::dynamical, theta, 0.0, 1.0};
    ComparisonRow row;
    row.theta = theta;
    row.geometric_formula = closed_form_average_infidelity(geo, err);
    row.dynamical_formula = closed_form_average_infidelity(dyn, dyn_err);
    row.formula_ratio = row.dynamical_formula / row.geometric_formula;
    row.geometric_exact = average_fidelity_numeric(geo, err, cfg, Execution{1}).infidelity;
    row.dynamical_exact = average_fidelity_numeric(dyn, dyn_err, cfg, Execution{1}).infidelity;
    row.exact_ratio = row.dynamical_exact / row.geometric_exact;
    row.duration_ratio = theta / kPi;
    report.rows[i] = row;
  });

  double max_dynamical = -1.0;
  double min_geometric = std::numeric_limits<double>::infinity();
  for (double theta : theta_grid) {
    if (theta <= 0.5 * kPi + 1e-9) {
      max_dynamical = std::max(
          max_dynamical,
          closed_form_average_infidelity(GateParams{GateKind::dynamical, theta, 0.0, 1.0}, omega_only));
    }
    min_geometric = std::min(
        min_geometric,
        closed_form_average_infidelity(GateParams{GateKind::geometric, theta, 0.0, 1.0}, omega_only));
  }
  if (max_dynamical < 0.0) throw DomainError("comparison grid needs at least one theta <= pi/2");
  report.half_ratio_check = max_dynamical / min_geometric;

  const double hadamard = 0.25 * kPi;
  report.hadamard_ratio =
      closed_form_average_infidelity(GateParams{GateKind::geometric, hadamard, 0.0, 1.0}, omega_only) /
      closed_form_average_infidelity(GateParams{GateKind::dynamical, hadamard, 0.0, 1.0}, omega_only);
  return report;
}

std::vector<double> default_adjudication_grid() {
  return {0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
}

std::vector<double> default_comparison_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 8; ++k) grid.push_back(kPi * k / 8.0);
  return grid;
}

}  // namespace holo::bench
