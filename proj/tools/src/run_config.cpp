#include "vsdg_cli/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "vsdg/manufactured.hpp"

namespace vsdg::cli {

namespace {

const std::map<std::string, Mode> kModes{{"simulate", Mode::simulate},
                                         {"convergence", Mode::convergence},
                                         {"conserve", Mode::conserve},
                                         {"stokes-only", Mode::stokes_only}};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Parser {
  CLI::App app{"Discontinuous Galerkin solver for the 2D x 2V Vlasov-Stokes system", "vsdg"};
  RunConfig cfg;
  std::string dt_text = "auto";
  std::string mode_text = "simulate";

  Parser() {
    app.set_config("--config", "", "Read options from a key=value file (flags override it)");
    app.allow_config_extras(false);
    app.add_option("--mode", mode_text, "simulate | convergence | conserve | stokes-only")
        ->check(CLI::IsMember({"simulate", "convergence", "conserve", "stokes-only"}));
    app.add_option("--case", cfg.case_name, "example1 | example2 | bump");
    app.add_option("--kx", cfg.kx, "Polynomial degree in x");
    app.add_option("--kv", cfg.kv, "Polynomial degree in v");
    app.add_option("--meshes", cfg.meshes, "Comma-separated x-cells per axis, e.g. 4,8,16")->delimiter(',');
    app.add_option("--tfinal", cfg.t_final, "Final time");
    app.add_option("--dt", dt_text, "Time step or 'auto'");
    app.add_option("--dt-coeff", cfg.dt_coeff, "c in the auto policy dt = min(CFL, c h^(k+1))");
    app.add_option("--cfl-safety", cfg.cfl_safety, "Safety factor of the CFL bound, in (0, 1]");
    app.add_option("--penalty", cfg.penalty, "SIP penalty parameter");
    app.add_option("--steps", cfg.steps, "Number of steps in conserve mode");
    app.add_flag("--force-periodic", cfg.force_periodic,
                 "Use periodic x-fluxes even if the exact solution is not periodic");
    app.add_option("--out", cfg.out_dir, "Output directory")->envname("VSDG_OUTPUT_DIR");
  }
};

}  // namespace

std::string to_string(Mode m) {
  for (const auto& [name, mode] : kModes)
    if (mode == m) return name;
  return "?";
}

std::string usage() { return Parser().app.help(); }

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
  if (argc <= 1) throw ConfigError("no arguments given\n" + usage());
  Parser p;
  try {
    p.app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << p.app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  RunConfig cfg = p.cfg;
  cfg.mode = kModes.at(p.mode_text);
  if (p.dt_text != "auto") {
    try {
      std::size_t used = 0;
      cfg.dt = std::stod(p.dt_text, &used);
      if (used != p.dt_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--dt must be a number or 'auto', got '" + p.dt_text + "'");
    }
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (cfg.case_name.empty()) fail("missing --case");
  bool known = false;
  for (const auto& n : case_names()) known = known || n == cfg.case_name;
  if (!known) fail("unknown case '" + cfg.case_name + "'");
  if (cfg.kx < 0 || cfg.kx > 6 || cfg.kv < 0 || cfg.kv > 6) fail("degrees must lie in [0, 6]");
  if (cfg.meshes.empty()) fail("--meshes must list at least one mesh");
  for (int n : cfg.meshes)
    if (n < 1) fail("mesh sizes must be positive");
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) fail("--tfinal must be finite and >= 0");
  if (cfg.dt && !(*cfg.dt > 0.0 && std::isfinite(*cfg.dt))) fail("--dt must be positive");
  if (!(cfg.dt_coeff > 0.0)) fail("--dt-coeff must be positive");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) fail("--cfl-safety must lie in (0, 1]");
  if (!(cfg.penalty > 0.0)) fail("--penalty must be positive, got " + fmt(cfg.penalty));
  if (cfg.steps < 1) fail("--steps must be positive");
  if (cfg.mode == Mode::convergence || cfg.mode == Mode::stokes_only) {
    if (cfg.meshes.size() < 2) fail("convergence studies need at least two meshes");
    for (std::size_t i = 0; i < cfg.meshes.size(); ++i) {
      const int n = cfg.meshes[i];
      if ((n & (n - 1)) != 0) fail("convergence meshes must be powers of two, got " + std::to_string(n));
      if (i > 0 && n != 2 * cfg.meshes[i - 1]) fail("convergence meshes must double from one to the next");
    }
  }
  if (cfg.mode == Mode::convergence && cfg.case_name == "bump")
    fail("case 'bump' has no exact solution; use it with --mode conserve or simulate");
  if (cfg.mode == Mode::stokes_only && cfg.case_name == "bump") fail("case 'bump' has no exact Stokes solution");
}

std::vector<std::string> describe(const RunConfig& cfg) {
  std::vector<std::string> out;
  out.push_back("mode=" + to_string(cfg.mode));
  out.push_back("case=" + cfg.case_name);
  out.push_back("kx=" + std::to_string(cfg.kx));
  out.push_back("kv=" + std::to_string(cfg.kv));
  std::string m;
  for (std::size_t i = 0; i < cfg.meshes.size(); ++i) m += (i ? "," : "") + std::to_string(cfg.meshes[i]);
  out.push_back("meshes=" + m);
  out.push_back("tfinal=" + fmt(cfg.t_final));
  out.push_back("dt=" + (cfg.dt ? fmt(*cfg.dt) : std::string("auto")));
  out.push_back("dt_coeff=" + fmt(cfg.dt_coeff));
  out.push_back("cfl_safety=" + fmt(cfg.cfl_safety));
  out.push_back("penalty=" + fmt(cfg.penalty));
  out.push_back("steps=" + std::to_string(cfg.steps));
  out.push_back(std::string("force_periodic=") + (cfg.force_periodic ? "true" : "false"));
  return out;
}

}  // namespace vsdg::cli
