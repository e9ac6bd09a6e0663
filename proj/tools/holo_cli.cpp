// holo: command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holo/holo.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(holo_status s) {
  switch (s) {
    case HOLO_ERR_NUMERIC:
    case HOLO_ERR_INTERNAL: return kExitNumeric;
    default: return kExitUsage;
  }
}

void check(holo_status s) {
  if (s != HOLO_OK) throw Failure{exit_code_for(s), holo_last_error()};
}

// Owning wrapper for holo_text.
std::string take(holo_text* text) {
  std::string out(holo_text_data(text), holo_text_size(text));
  holo_text_free(text);
  return out;
}

struct GateFlags {
  std::string kind = "geometric";
  double theta = std::numbers::pi / 2.0;
  double phi = 0.0;
  double omega = 1.0;
};

struct ErrorFlags {
  double domega_rel = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

struct AverageFlags {
  std::string method = "quadrature";
  std::size_t nodes_alpha = 64;
  std::size_t nodes_beta = 64;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

struct CommonFlags {
  std::string format = "csv";
  std::string output;
  bool degrees = false;
};

double angle(double value, bool degrees) { return degrees ? value * std::numbers::pi / 180.0 : value; }

holo_gate_params to_params(const GateFlags& g, bool degrees) {
  holo_gate_params p{};
  if (g.kind == "geometric") {
    p.kind = HOLO_GATE_GEOMETRIC;
  } else if (g.kind == "dynamical") {
    p.kind = HOLO_GATE_DYNAMICAL;
  } else {
    throw Failure{kExitUsage, "--kind must be geometric or dynamical"};
  }
  p.theta = angle(g.theta, degrees);
  p.phi = angle(g.phi, degrees);
  p.omega = g.omega;
  return p;
}

holo_error to_error(const ErrorFlags& e, bool degrees) {
  return holo_error{e.domega_rel, angle(e.dtheta, degrees), angle(e.dphi, degrees)};
}

unsigned env_threads() {
  const char* v = std::getenv("HOLO_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n > 4096) throw Failure{kExitUsage, "HOLO_THREADS must be a thread count"};
  return static_cast<unsigned>(n);
}

holo_average_config to_config(const AverageFlags& a) {
  holo_average_config c{};
  holo_average_config_default(&c);
  if (a.method == "quadrature") {
    c.method = HOLO_AVG_QUADRATURE;
  } else if (a.method == "monte_carlo" || a.method == "mc") {
    c.method = HOLO_AVG_MONTE_CARLO;
  } else {
    throw Failure{kExitUsage, "--method must be quadrature or monte_carlo"};
  }
  c.nodes_alpha = a.nodes_alpha;
  c.nodes_beta = a.nodes_beta;
  c.samples = a.samples;
  c.seed = a.seed;
  c.threads = env_threads();
  return c;
}

holo_format to_format(const std::string& f) { return f == "json" ? HOLO_FORMAT_JSON : HOLO_FORMAT_CSV; }

holo_sweep_axis to_axis(const std::string& a) {
  if (a == "theta") return HOLO_AXIS_THETA;
  if (a == "rel_omega") return HOLO_AXIS_REL_OMEGA;
  if (a == "d_theta") return HOLO_AXIS_D_THETA;
  if (a == "d_phi") return HOLO_AXIS_D_PHI;
  throw Failure{kExitUsage, "--axis must be theta, rel_omega, d_theta or d_phi"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read config file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Failure{kExitUsage, "cannot read config file '" + path + "'"};
  return buf.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Failure{kExitUsage, "write to standard output failed"};
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Failure{kExitUsage, "cannot write output file '" + path + "'"};
}

void add_gate_flags(CLI::App* cmd, GateFlags& g) {
  cmd->add_option("--kind", g.kind, "geometric or dynamical")
      ->check(CLI::IsMember({"geometric", "dynamical"}));
  cmd->add_option("--theta", g.theta, "gate angle (radians unless --degrees)");
  cmd->add_option("--phi", g.phi, "gate phase");
  cmd->add_option("--omega", g.omega, "Rabi frequency, > 0");
}

void add_error_flags(CLI::App* cmd, ErrorFlags& e) {
  cmd->add_option("--domega-rel", e.domega_rel, "relative Rabi-frequency error dOmega/Omega");
  cmd->add_option("--dtheta", e.dtheta, "mixing-angle error");
  cmd->add_option("--dphi", e.dphi, "phase error");
}

void add_average_flags(CLI::App* cmd, AverageFlags& a) {
  cmd->add_option("--method", a.method, "quadrature or monte_carlo")
      ->check(CLI::IsMember({"quadrature", "monte_carlo", "mc"}));
  cmd->add_option("--nodes-alpha", a.nodes_alpha, "quadrature nodes in cos(alpha)");
  cmd->add_option("--nodes-beta", a.nodes_beta, "quadrature nodes in beta");
  cmd->add_option("--samples", a.samples, "Monte Carlo samples");
  cmd->add_option("--seed", a.seed, "Monte Carlo seed");
}

void add_common_flags(CLI::App* cmd, CommonFlags& c) {
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", c.output, "output file (default: standard output)");
  cmd->add_flag("--degrees", c.degrees, "angles are given in degrees");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systematic-error laboratory for holonomic and dynamical single-qubit gates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(holo_version()));

  GateFlags gate;
  ErrorFlags err;
  AverageFlags avg;
  CommonFlags common;
  double alpha = 0.0, beta = 0.0;
  std::string config, axis = "rel_omega";
  std::vector<double> grid;

  auto* cmd_gate = app.add_subcommand("gate", "print ideal, exact and closed-form propagators");
  add_gate_flags(cmd_gate, gate);
  add_error_flags(cmd_gate, err);
  add_common_flags(cmd_gate, common);

  auto* cmd_fid = app.add_subcommand("fidelity", "state fidelity for one input state");
  add_gate_flags(cmd_fid, gate);
  add_error_flags(cmd_fid, err);
  add_common_flags(cmd_fid, common);
  cmd_fid->add_option("--alpha", alpha, "input polar angle");
  cmd_fid->add_option("--beta", beta, "input azimuth");

  auto* cmd_avg = app.add_subcommand("average", "Haar-averaged fidelity");
  add_gate_flags(cmd_avg, gate);
  add_error_flags(cmd_avg, err);
  add_average_flags(cmd_avg, avg);
  add_common_flags(cmd_avg, common);

  auto* cmd_sweep = app.add_subcommand("sweep", "averaged fidelity over a parameter grid");
  add_gate_flags(cmd_sweep, gate);
  add_error_flags(cmd_sweep, err);
  add_average_flags(cmd_sweep, avg);
  add_common_flags(cmd_sweep, common);
  auto* sweep_config = cmd_sweep->add_option("--config", config, "JSON sweep plan");
  auto* sweep_axis = cmd_sweep->add_option("--axis", axis, "theta, rel_omega, d_theta or d_phi");
  auto* sweep_grid = cmd_sweep->add_option("--grid", grid, "grid values")->delimiter(',');
  for (const char* name : {"--kind", "--theta", "--phi", "--omega", "--domega-rel", "--dtheta",
                           "--dphi", "--method", "--nodes-alpha", "--nodes-beta", "--samples",
                           "--seed", "--degrees"}) {
    sweep_config->excludes(cmd_sweep->get_option(name));
  }
  sweep_config->excludes(sweep_axis);
  sweep_config->excludes(sweep_grid);

  auto* cmd_verify = app.add_subcommand("verify", "adjudicate the second-order closed forms");
  add_common_flags(cmd_verify, common);
  cmd_verify->add_option("--grid", grid, "theta grid")->delimiter(',');
  cmd_verify->add_option("--nodes-alpha", avg.nodes_alpha, "quadrature nodes in cos(alpha)");
  cmd_verify->add_option("--nodes-beta", avg.nodes_beta, "quadrature nodes in beta");

  auto* cmd_cmp = app.add_subcommand("compare", "geometric versus dynamical gates over theta");
  add_error_flags(cmd_cmp, err);
  add_average_flags(cmd_cmp, avg);
  add_common_flags(cmd_cmp, common);
  cmd_cmp->add_option("--grid", grid, "theta grid")->delimiter(',');
  err.domega_rel = 0.0;

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "holo: " << msg << "\n";
    return kExitUsage;
  }

  try {
    const holo_format fmt = to_format(common.format);
    std::string text;
    holo_text* out = nullptr;

    if (cmd_gate->parsed()) {
      const auto p = to_params(gate, common.degrees);
      const auto e = to_error(err, common.degrees);
      check(holo_render_gate(&p, &e, fmt, &out));
      text = take(out);
    } else if (cmd_fid->parsed()) {
      const auto p = to_params(gate, common.degrees);
      const auto e = to_error(err, common.degrees);
      check(holo_render_state_fidelity(&p, &e, angle(alpha, common.degrees),
                                       angle(beta, common.degrees), fmt, &out));
      text = take(out);
    } else if (cmd_avg->parsed()) {
      const auto p = to_params(gate, common.degrees);
      const auto e = to_error(err, common.degrees);
      const auto c = to_config(avg);
      check(holo_render_average(&p, &e, &c, fmt, &out));
      text = take(out);
    } else if (cmd_sweep->parsed()) {
      holo_sweep_plan* plan = nullptr;
      if (!config.empty()) {
        check(holo_sweep_plan_from_json(read_file(config).c_str(), &plan));
      } else {
        if (grid.empty()) throw Failure{kExitUsage, "sweep needs --grid or --config"};
        const auto p = to_params(gate, common.degrees);
        const auto e = to_error(err, common.degrees);
        const auto c = to_config(avg);
        const holo_sweep_axis ax = to_axis(axis);
        if (ax != HOLO_AXIS_REL_OMEGA)
          for (double& g : grid) g = angle(g, common.degrees);
        check(holo_sweep_plan_create(&p, &e, ax, grid.data(), grid.size(), &c, &plan));
      }
      holo_table* table = nullptr;
      const holo_status s = holo_sweep_run(plan, env_threads(), &table);
      holo_sweep_plan_free(plan);
      check(s);
      const holo_status r = holo_table_render(table, fmt, &out);
      holo_table_free(table);
      check(r);
      text = take(out);
    } else if (cmd_verify->parsed()) {
      for (double& g : grid) g = angle(g, common.degrees);
      const auto c = to_config(AverageFlags{"quadrature", avg.nodes_alpha, avg.nodes_beta, 0, 0});
      holo_adjudication* report = nullptr;
      check(holo_adjudicate(grid.data(), grid.size(), &c, &report));
      const holo_status r = holo_adjudication_render(report, fmt, &out);
      holo_adjudication_free(report);
      check(r);
      text = take(out);
    } else if (cmd_cmp->parsed()) {
      for (double& g : grid) g = angle(g, common.degrees);
      // Comparison needs a pulse-area error; default to 1%.
      if (cmd_cmp->count("--domega-rel") == 0) err.domega_rel = 0.01;
      const auto e = to_error(err, common.degrees);
      const auto c = to_config(avg);
      holo_comparison* report = nullptr;
      check(holo_compare(grid.data(), grid.size(), &e, &c, &report));
      const holo_status r = holo_comparison_render(report, fmt, &out);
      holo_comparison_free(report);
      check(r);
      text = take(out);
    }
    emit(text, common.output);
    return 0;
  } catch (const Failure& f) {
    std::cerr << "holo: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "holo: " << e.what() << "\n";
    return kExitNumeric;
  }
}
