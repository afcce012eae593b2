#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>

#include "vsdg/linalg.hpp"
#include "vsdg_cli/run_config.hpp"
#include "vsdg_cli/studies.hpp"

namespace {

int run(const vsdg::cli::RunConfig& cfg) {
  using namespace vsdg::cli;
  switch (cfg.mode) {
    case Mode::convergence: {
      const auto r = run_convergence_study(cfg);
      std::printf("%10s %14s %14s %14s %7s %7s %7s\n", "h", "errL2f", "errL2u", "errL2p", "eoc_f", "eoc_u",
                  "eoc_p");
      for (const auto& row : r.table.rows)
        std::printf("%10.6f %14.6e %14.6e %14.6e %7.3f %7.3f %7.3f\n", row.h, row.err_f, row.err_u, row.err_p,
                    row.eoc_f, row.eoc_u, row.eoc_p);
      std::printf("wrote %s\n", write_convergence_csv(cfg, r).c_str());
      return 0;
    }
    case Mode::conserve: {
      const auto r = run_conservation_audit(cfg);
      std::printf("steps=%d mass_drift=%.3e momentum_drift=%s max_norm_ratio=%.6f\n", cfg.steps, r.mass_drift,
                  std::isnan(r.momentum_drift) ? "NA" : std::to_string(r.momentum_drift).c_str(),
                  r.stability_ratio);
      std::printf("wrote %s\n", write_conservation_csv(cfg, r).c_str());
      return 0;
    }
    case Mode::stokes_only: {
      const auto r = run_stokes_only(cfg);
      for (std::size_t i = 0; i < r.runs.size(); ++i)
        std::printf("h=%.6f errL2u=%.6e errEnergyU=%.6e errL2p=%.6e\n", r.runs[i].h, r.runs[i].err_u,
                    r.runs[i].err_energy, r.runs[i].err_p);
      for (std::size_t i = 0; i < r.eoc_u.size(); ++i)
        std::printf("eoc_u=%.3f eoc_energy=%.3f eoc_p=%.3f\n", r.eoc_u[i], r.eoc_energy[i], r.eoc_p[i]);
      std::printf("wrote %s\n", write_stokes_csv(cfg, r).c_str());
      return 0;
    }
    case Mode::simulate: {
      const auto r = run_simulation(cfg);
      const auto& last = r.back();
      std::printf("t=%.6f steps=%zu mass=%.12e norm_f=%.6e errL2f=%.6e\n", last.t, r.size() - 1, last.q.mass,
                  last.norm_f, last.err_f);
      std::printf("wrote %s\n", write_simulation_csv(cfg, r).c_str());
      return 0;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const auto cfg = vsdg::cli::parse_config(argc, argv);
    if (!cfg) return 0;
    return run(*cfg);
  } catch (const vsdg::cli::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  }
}
