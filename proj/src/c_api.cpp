#include "holo/holo.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "holo/bench.hpp"
#include "holo/dynamical.hpp"
#include "holo/errors.hpp"
#include "holo/holonomic.hpp"
#include "holo/report_io.hpp"

using namespace holo;

struct holo_sweep_plan {
  bench::SweepPlan plan;
};
struct holo_table {
  bench::SweepPlan plan;
  std::vector<bench::SweepRow> rows;
};
struct holo_adjudication {
  bench::AdjudicationReport report;
};
struct holo_comparison {
  bench::ComparisonReport report;
};
struct holo_text {
  std::string text;
};

namespace {

thread_local std::string g_last_error;

holo_status fail(holo_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs fn, mapping exceptions onto status codes.
template <class Fn>
holo_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HOLO_OK;
  } catch (const ValidationError& e) {
    return fail(HOLO_ERR_INVALID, e.what());
  } catch (const DomainError& e) {
    return fail(HOLO_ERR_DOMAIN, e.what());
  } catch (const NumericError& e) {
    return fail(HOLO_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HOLO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HOLO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HOLO_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ValidationError(std::string(what) + " must not be NULL");
}

bench::GateParams to_params(const holo_gate_params* p) {
  require(p, "gate params");
  bench::GateParams out;
  switch (p->kind) {
    case HOLO_GATE_GEOMETRIC: out.kind = bench::GateKind::geometric; break;
    case HOLO_GATE_DYNAMICAL: out.kind = bench::GateKind::dynamical; break;
    default: throw ValidationError("unknown gate kind");
  }
  out.theta = p->theta;
  out.phi = p->phi;
  out.omega = p->omega;
  return out;
}

SystematicError to_error(const holo_error* e) {
  if (e == nullptr) return {};
  SystematicError out{e->rel_omega, e->d_theta, e->d_phi};
  out.validate();
  return out;
}

bench::AverageConfig to_config(const holo_average_config* c) {
  bench::AverageConfig out;
  if (c == nullptr) return out;
  switch (c->method) {
    case HOLO_AVG_QUADRATURE: out.method = bench::AverageMethod::quadrature; break;
    case HOLO_AVG_MONTE_CARLO: out.method = bench::AverageMethod::monte_carlo; break;
    default: throw ValidationError("unknown averaging method");
  }
  out.nodes_alpha = c->nodes_alpha;
  out.nodes_beta = c->nodes_beta;
  out.samples = c->samples;
  out.seed = c->seed;
  out.validate();
  return out;
}

bench::Execution to_exec(const holo_average_config* c) {
  return bench::Execution{c == nullptr ? 0u : c->threads};
}

io::Format to_format(holo_format f) {
  switch (f) {
    case HOLO_FORMAT_CSV: return io::Format::csv;
    case HOLO_FORMAT_JSON: return io::Format::json;
  }
  throw ValidationError("unknown output format");
}

bench::SweepAxis to_axis(holo_sweep_axis a) {
  switch (a) {
    case HOLO_AXIS_THETA: return bench::SweepAxis::theta;
    case HOLO_AXIS_REL_OMEGA: return bench::SweepAxis::rel_omega;
    case HOLO_AXIS_D_THETA: return bench::SweepAxis::d_theta;
    case HOLO_AXIS_D_PHI: return bench::SweepAxis::d_phi;
  }
  throw ValidationError("unknown sweep axis");
}

std::vector<double> to_grid(const double* grid, size_t n) {
  if (n > 0) require(grid, "grid");
  return std::vector<double>(grid, grid + n);
}

holo_text* make_text(std::string s) { return new holo_text{std::move(s)}; }

Matrix gate_matrix(const bench::GateParams& p, const SystematicError& err, int which) {
  if (p.kind == bench::GateKind::geometric) {
    const holonomic::LambdaGateSpec spec(p.theta, p.phi, p.omega);
    switch (which) {
      case 0: return holonomic::ideal_gate(spec.theta(), spec.phi()).matrix();
      case 1: return holonomic::exact_propagator(spec, err).matrix();
      case 2: return holonomic::closed_form_propagator(spec, err);
    }
  } else {
    const dynamical::RabiGateSpec spec(p.theta, p.phi, p.omega);
    switch (which) {
      case 0: return dynamical::ideal_gate(spec.theta(), spec.phi()).matrix();
      case 1: return expm_unitary(dynamical::rabi_hamiltonian(spec, err), spec.duration()).matrix();
      case 2: return dynamical::perturbed_gate(spec, err).matrix();
    }
  }
  throw ValidationError("matrix selector must be 0 (ideal), 1 (exact) or 2 (closed form)");
}

}  // namespace

extern "C" {

const char* holo_last_error(void) { return g_last_error.c_str(); }

const char* holo_version(void) { return "1.0.0"; }

void holo_average_config_default(holo_average_config* cfg) {
  if (cfg == nullptr) return;
  const bench::AverageConfig d;
  cfg->method = HOLO_AVG_QUADRATURE;
  cfg->nodes_alpha = d.nodes_alpha;
  cfg->nodes_beta = d.nodes_beta;
  cfg->samples = d.samples;
  cfg->seed = d.seed;
  cfg->threads = 0;
}

holo_status holo_gate_matrix(const holo_gate_params* params, const holo_error* err, int which,
                             holo_complex out[9], size_t* dim) {
  return guarded([&] {
    require(out, "out");
    require(dim, "dim");
    const Matrix m = gate_matrix(to_params(params), to_error(err), which);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t k = 0; k < m.dim(); ++k)
        out[i * m.dim() + k] = holo_complex{m(i, k).real(), m(i, k).imag()};
    *dim = m.dim();
  });
}

holo_status holo_state_fidelity(const holo_gate_params* params, const holo_error* err, double alpha,
                                double beta, double* exact, double* order2, double* leakage) {
  return guarded([&] {
    const auto p = to_params(params);
    const auto e = to_error(err);
    const BlochAngles in{alpha, beta};
    double ex = 0.0, o2 = 0.0, lk = 0.0;
    if (p.kind == bench::GateKind::geometric) {
      const holonomic::LambdaGateSpec spec(p.theta, p.phi, p.omega);
      const holonomic::Evaluator eval(spec, e);
      ex = eval.fidelity(in);
      o2 = holonomic::state_fidelity_order2(spec, e, in);
      lk = eval.leakage(in);
    } else {
      const dynamical::RabiGateSpec spec(p.theta, p.phi, p.omega);
      ex = dynamical::state_fidelity_exact(dynamical::GateSequence(spec), e, in);
      o2 = dynamical::state_fidelity_order2(spec, e, in);
    }
    if (exact) *exact = ex;
    if (order2) *order2 = o2;
    if (leakage) *leakage = lk;
  });
}

holo_status holo_average_fidelity(const holo_gate_params* params, const holo_error* err,
                                  const holo_average_config* cfg, holo_average_result* out) {
  return guarded([&] {
    require(out, "out");
    const auto r = bench::average_fidelity_numeric(to_params(params), to_error(err), to_config(cfg),
                                                   to_exec(cfg));
    *out = holo_average_result{r.mean, r.std_error, r.infidelity, r.leakage};
  });
}

holo_status holo_closed_form_average_fidelity(const holo_gate_params* params, const holo_error* err,
                                        double* out) {
  return guarded([&] {
    require(out, "out");
    *out = bench::closed_form_average_fidelity(to_params(params), to_error(err));
  });
}

holo_status holo_sweep_plan_create(const holo_gate_params* params, const holo_error* err,
                                   holo_sweep_axis axis, const double* grid, size_t n,
                                   const holo_average_config* cfg, holo_sweep_plan** out) {
  return guarded([&] {
    require(out, "out");
    bench::SweepPlan plan;
    plan.params = to_params(params);
    plan.err = to_error(err);
    plan.axis = to_axis(axis);
    plan.grid = to_grid(grid, n);
    plan.averaging = to_config(cfg);
    plan.validate();
    *out = new holo_sweep_plan{std::move(plan)};
  });
}

holo_status holo_sweep_plan_from_json(const char* json, holo_sweep_plan** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new holo_sweep_plan{io::parse_sweep_plan(json)};
  });
}

void holo_sweep_plan_free(holo_sweep_plan* plan) { delete plan; }

holo_status holo_sweep_run(const holo_sweep_plan* plan, unsigned threads, holo_table** out) {
  return guarded([&] {
    require(plan, "plan");
    require(out, "out");
    auto rows = bench::sweep(plan->plan, bench::Execution{threads});
    *out = new holo_table{plan->plan, std::move(rows)};
  });
}

size_t holo_table_size(const holo_table* table) { return table ? table->rows.size() : 0; }

holo_status holo_table_row(const holo_table* table, size_t i, holo_sweep_row* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (i >= table->rows.size()) throw ValidationError("row index out of range");
    const auto& r = table->rows[i];
    *out = holo_sweep_row{r.axis, r.exact_avg, r.formula_avg, r.leakage_avg, r.mc_std_error};
  });
}

holo_status holo_table_render(const holo_table* table, holo_format format, holo_text** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    *out = make_text(io::render_sweep(table->plan, table->rows, to_format(format)));
  });
}

void holo_table_free(holo_table* table) { delete table; }

holo_status holo_adjudicate(const double* theta_grid, size_t n, const holo_average_config* cfg,
                            holo_adjudication** out) {
  return guarded([&] {
    require(out, "out");
    bench::AdjudicationOptions opts;
    opts.averaging = to_config(cfg);
    const auto grid = n == 0 ? bench::default_adjudication_grid() : to_grid(theta_grid, n);
    *out = new holo_adjudication{bench::adjudicate_formulas(grid, opts)};
  });
}

size_t holo_adjudication_size(const holo_adjudication* report) {
  return report ? report->report.entries.size() : 0;
}

holo_status holo_adjudication_entry(const holo_adjudication* report, size_t i,
                                    holo_term_verdict* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (i >= report->report.entries.size()) throw ValidationError("entry index out of range");
    const auto& e = report->report.entries[i];
    *out = holo_term_verdict{static_cast<holo_error_term>(e.term),
                             e.theta,
                             e.closed_form_coefficient,
                             e.formula_quadrature,
                             e.exact_coefficient,
                             e.residual.slope,
                             e.residual.r_squared,
                             e.residual.exact_match ? 1 : 0,
                             e.verdict == bench::Verdict::consistent ? HOLO_CONSISTENT : HOLO_DISCREPANT,
                             e.per_state_verdict == bench::Verdict::consistent ? HOLO_CONSISTENT
                                                                               : HOLO_DISCREPANT};
  });
}

holo_status holo_adjudication_render(const holo_adjudication* report, holo_format format,
                                     holo_text** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = make_text(io::render_adjudication(report->report, to_format(format)));
  });
}

void holo_adjudication_free(holo_adjudication* report) { delete report; }

holo_status holo_compare(const double* theta_grid, size_t n, const holo_error* err,
                         const holo_average_config* cfg, holo_comparison** out) {
  return guarded([&] {
    require(out, "out");
    const auto grid = n == 0 ? bench::default_comparison_grid() : to_grid(theta_grid, n);
    *out = new holo_comparison{
        bench::compare_gates(grid, to_error(err), to_config(cfg), to_exec(cfg))};
  });
}

holo_status holo_comparison_summary_get(const holo_comparison* report,
                                        holo_comparison_summary* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = holo_comparison_summary{report->report.half_ratio_check, report->report.hadamard_ratio,
                                   report->report.rows.size()};
  });
}

holo_status holo_comparison_row_get(const holo_comparison* report, size_t i,
                                    holo_comparison_row* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (i >= report->report.rows.size()) throw ValidationError("row index out of range");
    const auto& r = report->report.rows[i];
    *out = holo_comparison_row{r.theta,           r.geometric_formula, r.dynamical_formula,
                               r.formula_ratio,   r.geometric_exact,   r.dynamical_exact,
                               r.exact_ratio,     r.duration_ratio};
  });
}

holo_status holo_comparison_render(const holo_comparison* report, holo_format format,
                                   holo_text** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = make_text(io::render_comparison(report->report, to_format(format)));
  });
}

void holo_comparison_free(holo_comparison* report) { delete report; }

holo_status holo_render_gate(const holo_gate_params* params, const holo_error* err,
                             holo_format format, holo_text** out) {
  return guarded([&] {
    require(out, "out");
    *out = make_text(io::render_gate(to_params(params), to_error(err), to_format(format)));
  });
}

holo_status holo_render_state_fidelity(const holo_gate_params* params, const holo_error* err,
                                       double alpha, double beta, holo_format format,
                                       holo_text** out) {
  return guarded([&] {
    require(out, "out");
    *out = make_text(io::render_state_fidelity(to_params(params), to_error(err),
                                               BlochAngles{alpha, beta}, to_format(format)));
  });
}

holo_status holo_render_average(const holo_gate_params* params, const holo_error* err,
                                const holo_average_config* cfg, holo_format format,
                                holo_text** out) {
  return guarded([&] {
    require(out, "out");
    const auto p = to_params(params);
    const auto e = to_error(err);
    const auto c = to_config(cfg);
    const auto r = bench::average_fidelity_numeric(p, e, c, to_exec(cfg));
    *out = make_text(io::render_average(p, e, c, r, to_format(format)));
  });
}

const char* holo_text_data(const holo_text* text) { return text ? text->text.c_str() : ""; }
size_t holo_text_size(const holo_text* text) { return text ? text->text.size() : 0; }
void holo_text_free(holo_text* text) { delete text; }

}  // extern "C"
