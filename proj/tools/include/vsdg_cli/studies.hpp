#pragma once

#include <string>
#include <vector>

#include "vsdg/diagnostics.hpp"
#include "vsdg/manufactured.hpp"
#include "vsdg/splitting.hpp"
#include "vsdg_cli/run_config.hpp"

namespace vsdg::cli {

/// Phase space on x_domain with N x N cells and v_domain with 2N x 2N cells.
std::shared_ptr<const PhaseSpace> phase_space_for(const ManufacturedCase& mc, int n, int kx, int kv);

/// Time step for one mesh: the explicit dt, or min(CFL, c h^(min k + 1))
/// rounded down so that an integer number of steps reaches t_final.
double choose_dt(const RunConfig& cfg, const PhaseSpace& space, double u_bound);

struct MeshRun {
  int n = 0;
  double h = 0.0;
  double dt = 0.0;
  long steps = 0;
  double err_f = 0.0, err_u = 0.0, err_p = 0.0;
  /// max_n ||f^n|| / (exp(1.1 t_n) ||f^0||).
  double stability_ratio = 0.0;
  double min_rho = 0.0;
};

struct ConvergenceResult {
  std::vector<MeshRun> runs;
  ConvergenceTable table;
};

ConvergenceResult run_convergence_study(const RunConfig& cfg);

struct ConservationSample {
  double t;
  ConservedQuantities q;
  double min_rho;
  double norm_f;
};

struct ConservationResult {
  std::vector<ConservationSample> samples;
  double mass_drift = 0.0;
  /// NaN when k_x or k_v is 0 (momentum is not conserved there).
  double momentum_drift = 0.0;
  double stability_ratio = 0.0;
};

/// Runs cfg.steps steps with F = G = 0 on the first mesh of cfg.meshes.
ConservationResult run_conservation_audit(const RunConfig& cfg);

struct StokesRun {
  double h;
  double err_u, err_energy, err_p;
};

struct StokesStudy {
  std::vector<StokesRun> runs;
  std::vector<double> eoc_u, eoc_energy, eoc_p;
};

/// Stokes problem alone with the case's u, p, the projected exact density at
/// t = 0 and G = -Lap u + rho u + grad p.
StokesStudy run_stokes_only(const RunConfig& cfg);

struct SimulationSample {
  double t;
  ConservedQuantities q;
  double min_rho;
  double norm_f;
  double err_f;  // NaN without an exact solution
};

std::vector<SimulationSample> run_simulation(const RunConfig& cfg);

/// CSV writers; each file starts with the "# key=value" config echo.
std::string write_convergence_csv(const RunConfig& cfg, const ConvergenceResult& r);
std::string write_conservation_csv(const RunConfig& cfg, const ConservationResult& r);
std::string write_stokes_csv(const RunConfig& cfg, const StokesStudy& r);
std::string write_simulation_csv(const RunConfig& cfg, const std::vector<SimulationSample>& r);

}  // namespace vsdg::cli
