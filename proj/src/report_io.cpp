#include "holo/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "holo/dynamical.hpp"
#include "holo/errors.hpp"
#include "holo/holonomic.hpp"

namespace holo::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// 12 significant digits, read back so JSON output carries the same digits.
double round12(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
  double out = 0.0;
  std::from_chars(buf.data(), res.ptr, out);
  return out == 0.0 ? 0.0 : out;  // drop negative zero
}

std::string format12(double value) {
  std::array<char, 32> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), round12(value), std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

std::string csv_number(double value) { return std::isnan(value) ? "" : format_double(value); }

ordered_json json_number(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct NamedMatrix {
  std::string name;
  Matrix m;
};

std::vector<NamedMatrix> gate_matrices(const bench::GateParams& params, const SystematicError& err) {
  if (params.kind == bench::GateKind::geometric) {
    const holonomic::LambdaGateSpec spec(params.theta, params.phi, params.omega);
    return {{"ideal", holonomic::ideal_gate(spec.theta(), spec.phi()).matrix()},
            {"exact", holonomic::exact_propagator(spec, err).matrix()},
            {"closed_form", holonomic::closed_form_propagator(spec, err)}};
  }
  const dynamical::RabiGateSpec spec(params.theta, params.phi, params.omega);
  return {{"ideal", dynamical::ideal_gate(spec.theta(), spec.phi()).matrix()},
          {"exact", expm_unitary(dynamical::rabi_hamiltonian(spec, err), spec.duration()).matrix()},
          {"closed_form", dynamical::perturbed_gate(spec, err).matrix()}};
}

ordered_json error_json(const SystematicError& err) {
  return ordered_json{{"domega_rel", err.rel_omega}, {"dtheta", err.d_theta}, {"dphi", err.d_phi}};
}

ordered_json params_json(const bench::GateParams& params) {
  return ordered_json{{"gate_kind", bench::to_string(params.kind)},
                      {"theta", params.theta},
                      {"phi", params.phi},
                      {"omega", params.omega}};
}

template <class T>
T require(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key)) {
    throw ValidationError(std::string("config: missing \"") + key + "\" in " + where);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: \"") + key + "\" in " + where + " has the wrong type");
  }
}

template <class T>
T optional(const json& obj, const char* key, T fallback, const char* where) {
  return obj.contains(key) ? require<T>(obj, key, where) : fallback;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  if (!obj.is_object()) throw ValidationError(std::string("config: ") + where + " must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("config: unknown key \"" + key + "\" in " + where);
    }
  }
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ValidationError("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

bench::SweepPlan parse_sweep_plan(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(root, {"schema", "gate_kind", "theta", "phi", "omega", "errors", "sweep", "averaging"},
                 "top level");
  const int schema = require<int>(root, "schema", "top level");
  if (schema != kSchemaVersion) {
    throw ValidationError("config: unsupported schema version " + std::to_string(schema));
  }

  bench::SweepPlan plan;
  plan.params.kind = bench::parse_gate_kind(require<std::string>(root, "gate_kind", "top level"));
  plan.params.theta = require<double>(root, "theta", "top level");
  plan.params.phi = optional<double>(root, "phi", 0.0, "top level");
  plan.params.omega = optional<double>(root, "omega", 1.0, "top level");

  if (root.contains("errors")) {
    const json& e = root.at("errors");
    reject_unknown(e, {"domega_rel", "dtheta", "dphi"}, "errors");
    plan.err.rel_omega = optional<double>(e, "domega_rel", 0.0, "errors");
    plan.err.d_theta = optional<double>(e, "dtheta", 0.0, "errors");
    plan.err.d_phi = optional<double>(e, "dphi", 0.0, "errors");
  }

  if (!root.contains("sweep")) throw ValidationError("config: missing \"sweep\"");
  const json& s = root.at("sweep");
  reject_unknown(s, {"axis", "grid"}, "sweep");
  plan.axis = bench::parse_sweep_axis(require<std::string>(s, "axis", "sweep"));
  plan.grid = require<std::vector<double>>(s, "grid", "sweep");

  if (root.contains("averaging")) {
    const json& a = root.at("averaging");
    reject_unknown(a, {"method", "nodes_alpha", "nodes_beta", "samples", "seed"}, "averaging");
    plan.averaging.method =
        bench::parse_average_method(optional<std::string>(a, "method", "quadrature", "averaging"));
    plan.averaging.nodes_alpha = optional<std::size_t>(a, "nodes_alpha", 64, "averaging");
    plan.averaging.nodes_beta = optional<std::size_t>(a, "nodes_beta", 64, "averaging");
    plan.averaging.samples = optional<std::size_t>(a, "samples", 100000, "averaging");
    plan.averaging.seed = optional<std::uint64_t>(a, "seed", 0, "averaging");
  }
  plan.validate();
  return plan;
}

std::string sweep_plan_to_json(const bench::SweepPlan& plan) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["gate_kind"] = bench::to_string(plan.params.kind);
  j["theta"] = plan.params.theta;
  j["phi"] = plan.params.phi;
  j["omega"] = plan.params.omega;
  j["errors"] = error_json(plan.err);
  j["sweep"] = ordered_json{{"axis", bench::to_string(plan.axis)}, {"grid", plan.grid}};
  j["averaging"] = ordered_json{{"method", bench::to_string(plan.averaging.method)},
                                {"nodes_alpha", plan.averaging.nodes_alpha},
                                {"nodes_beta", plan.averaging.nodes_beta},
                                {"samples", plan.averaging.samples},
                                {"seed", plan.averaging.seed}};
  return dump(j);
}

std::string render_gate(const bench::GateParams& params, const SystematicError& err, Format format) {
  const auto matrices = gate_matrices(params, err);
  if (format == Format::csv) {
    std::ostringstream out;
    out << "matrix,row,col,re,im\n";
    for (const auto& [name, m] : matrices)
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t k = 0; k < m.dim(); ++k)
          out << name << ',' << i << ',' << k << ',' << format12(m(i, k).real()) << ','
              << format12(m(i, k).imag()) << '\n';
    return out.str();
  }
  ordered_json j = params_json(params);
  j["errors"] = error_json(err);
  for (const auto& [name, m] : matrices) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < m.dim(); ++k)
        row.push_back(ordered_json::array({round12(m(i, k).real()), round12(m(i, k).imag())}));
      rows.push_back(row);
    }
    j[name] = rows;
  }
  return dump(j);
}

std::string render_state_fidelity(const bench::GateParams& params, const SystematicError& err,
                                  const BlochAngles& input, Format format) {
  double exact = 0.0, order2 = 0.0, leak = 0.0;
  if (params.kind == bench::GateKind::geometric) {
    const holonomic::LambdaGateSpec spec(params.theta, params.phi, params.omega);
    const holonomic::Evaluator eval(spec, err);
    exact = eval.fidelity(input);
    order2 = holonomic::state_fidelity_order2(spec, err, input);
    leak = eval.leakage(input);
  } else {
    const dynamical::RabiGateSpec spec(params.theta, params.phi, params.omega);
    exact = dynamical::state_fidelity_exact(dynamical::GateSequence(spec), err, input);
    order2 = dynamical::state_fidelity_order2(spec, err, input);
  }
  if (format == Format::csv) {
    return "exact,order2,leakage\n" + format_double(exact) + "," + format_double(order2) + "," +
           format_double(leak) + "\n";
  }
  ordered_json j = params_json(params);
  j["errors"] = error_json(err);
  j["input"] = ordered_json{{"alpha", input.alpha}, {"beta", input.beta}};
  j["exact"] = exact;
  j["order2"] = order2;
  j["leakage"] = leak;
  return dump(j);
}

std::string render_average(const bench::GateParams& params, const SystematicError& err,
                           const bench::AverageConfig& cfg, const bench::AverageResult& result,
                           Format format) {
  const double formula = bench::closed_form_average_fidelity(params, err);
  if (format == Format::csv) {
    return "mean,std_error,paper_avg,leakage_avg\n" + format_double(result.mean) + "," +
           format_double(result.std_error) + "," + format_double(formula) + "," +
           format_double(result.leakage) + "\n";
  }
  ordered_json j = params_json(params);
  j["errors"] = error_json(err);
  j["method"] = bench::to_string(cfg.method);
  j["mean"] = result.mean;
  j["std_error"] = result.std_error;
  j["paper_avg"] = formula;
  j["leakage_avg"] = result.leakage;
  return dump(j);
}

std::string render_sweep(const bench::SweepPlan& plan, const std::vector<bench::SweepRow>& rows,
                         Format format) {
  if (format == Format::csv) {
    std::string out = "axis,exact_avg,paper_avg,leakage_avg,mc_std_error\n";
    for (const auto& r : rows) {
      out += format_double(r.axis) + "," + format_double(r.exact_avg) + "," +
             format_double(r.formula_avg) + "," + format_double(r.leakage_avg) + "," +
             format_double(r.mc_std_error) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["swept"] = bench::to_string(plan.axis);
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back(ordered_json{{"axis", r.axis},
                               {"exact_avg", r.exact_avg},
                               {"paper_avg", r.formula_avg},
                               {"leakage_avg", r.leakage_avg},
                               {"mc_std_error", r.mc_std_error}});
  }
  j["rows"] = arr;
  return dump(j);
}

std::string render_adjudication(const bench::AdjudicationReport& report, Format format) {
  if (format == Format::csv) {
    std::string out =
        "term,theta,closed_form_coefficient,formula_quadrature,exact_coefficient,residual_slope,"
        "residual_r_squared,exact_match,verdict,per_state_verdict\n";
    for (const auto& e : report.entries) {
      out += std::string(bench::to_string(e.term)) + "," + format_double(e.theta) + "," +
             format_double(e.closed_form_coefficient) + "," + format_double(e.formula_quadrature) + "," +
             format_double(e.exact_coefficient) + "," + csv_number(e.residual.slope) + "," +
             csv_number(e.residual.r_squared) + "," + (e.residual.exact_match ? "true" : "false") +
             "," + std::string(bench::to_string(e.verdict)) + "," +
             std::string(bench::to_string(e.per_state_verdict)) + "\n";
    }
    return out;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& e : report.entries) {
    arr.push_back(ordered_json{
        {"term", bench::to_string(e.term)},
        {"theta", e.theta},
        {"closed_form_coefficient", e.closed_form_coefficient},
        {"formula_quadrature", e.formula_quadrature},
        {"exact_coefficient", e.exact_coefficient},
        {"residual",
         ordered_json{{"slope", json_number(e.residual.slope)},
                      {"intercept", json_number(e.residual.intercept)},
                      {"r_squared", json_number(e.residual.r_squared)},
                      {"window", ordered_json::array({e.residual.window.lo, e.residual.window.hi})},
                      {"n_points", e.residual.n_points},
                      {"exact_match", e.residual.exact_match}}},
        {"verdict", bench::to_string(e.verdict)},
        {"per_state_verdict", bench::to_string(e.per_state_verdict)}});
  }
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["entries"] = arr;
  return dump(j);
}

std::string render_comparison(const bench::ComparisonReport& report, Format format) {
  if (format == Format::csv) {
    std::string out =
        "theta,geometric_formula,dynamical_formula,formula_ratio,geometric_exact,dynamical_exact,"
        "exact_ratio,duration_ratio,half_ratio_check,hadamard_ratio\n";
    for (const auto& r : report.rows) {
      out += format_double(r.theta) + "," + format_double(r.geometric_formula) + "," +
             format_double(r.dynamical_formula) + "," + format_double(r.formula_ratio) + "," +
             format_double(r.geometric_exact) + "," + format_double(r.dynamical_exact) + "," +
             format_double(r.exact_ratio) + "," + format_double(r.duration_ratio) + "," +
             format_double(report.half_ratio_check) + "," + format_double(report.hadamard_ratio) +
             "\n";
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back(ordered_json{{"theta", r.theta},
                                {"geometric_formula", r.geometric_formula},
                                {"dynamical_formula", r.dynamical_formula},
                                {"formula_ratio", r.formula_ratio},
                                {"geometric_exact", r.geometric_exact},
                                {"dynamical_exact", r.dynamical_exact},
                                {"exact_ratio", r.exact_ratio},
                                {"duration_ratio", r.duration_ratio}});
  }
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["half_ratio_check"] = report.half_ratio_check;
  j["hadamard_ratio"] = report.hadamard_ratio;
  j["rows"] = rows;
  return dump(j);
}

}  // namespace holo::io
