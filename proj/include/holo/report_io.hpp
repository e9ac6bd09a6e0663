#pragma once

// Text rendering of results (CSV and JSON) and the sweep-plan config schema.
// Numbers use shortest round-trip decimal formatting; output is locale
// independent and newline terminated.

#include <string>
#include <string_view>
#include <vector>

#include "holo/bench.hpp"

namespace holo::io {

enum class Format { csv, json };

Format parse_format(std::string_view name);

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

inline constexpr int kSchemaVersion = 1;

// {"schema": 1, "gate_kind", "theta", "phi", "omega"?, "errors": {"domega_rel", "dtheta",
// "dphi"}, "sweep": {"axis", "grid"}, "averaging": {"method", "nodes_alpha", "nodes_beta",
// "samples", "seed"}}. Throws ValidationError on malformed input.
bench::SweepPlan parse_sweep_plan(std::string_view json_text);
std::string sweep_plan_to_json(const bench::SweepPlan& plan);

// Ideal, exact and closed-form propagators, one entry per line, 12 significant digits.
std::string render_gate(const bench::GateParams& params, const SystematicError& err, Format format);

std::string render_state_fidelity(const bench::GateParams& params, const SystematicError& err,
                                  const BlochAngles& input, Format format);

std::string render_average(const bench::GateParams& params, const SystematicError& err,
                           const bench::AverageConfig& cfg, const bench::AverageResult& result,
                           Format format);

std::string render_sweep(const bench::SweepPlan& plan, const std::vector<bench::SweepRow>& rows,
                         Format format);

std::string render_adjudication(const bench::AdjudicationReport& report, Format format);

std::string render_comparison(const bench::ComparisonReport& report, Format format);

}  // namespace holo::io
