#include "vsdg_cli/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace vsdg::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

PhaseField initial_field(const ManufacturedCase& mc, const std::shared_ptr<const PhaseSpace>& space) {
  if (mc.f_terms) return project_separable(space, mc.f_terms(0.0));
  return project_initial(space, [f = mc.f](const Vec2& x, const Vec2& v) { return f(0.0, x, v); });
}

double phase_error(const ManufacturedCase& mc, const PhaseField& fh, double t) {
  if (mc.f_terms) return l2_error_phase(fh, mc.f_terms(t));
  return l2_error_phase(fh, [f = mc.f, t](const Vec2& x, const Vec2& v) { return f(t, x, v); });
}

std::string open_csv(const RunConfig& cfg, const std::string& name, std::ofstream& out) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = (std::filesystem::path(cfg.out_dir) / name).string();
  out.open(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& line : describe(cfg)) out << "# " << line << '\n';
  return path;
}

double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

std::shared_ptr<const PhaseSpace> phase_space_for(const ManufacturedCase& mc, int n, int kx, int kv) {
  return make_phase_space(mc.x_domain, {n, n}, kx, mc.v_domain, {2 * n, 2 * n}, kv);
}

double choose_dt(const RunConfig& cfg, const PhaseSpace& space, double u_bound) {
  if (cfg.dt) return *cfg.dt;
  const int k = std::min(space.x()->degree(), space.v()->degree());
  double dt = std::min(cfl_dt(space, u_bound, cfg.cfl_safety), cfg.dt_coeff * std::pow(space.mesh().h(), k + 1));
  if (cfg.t_final > 0.0) {
    const double steps = std::ceil(cfg.t_final / dt - 1e-9);
    dt = cfg.t_final / steps;
  }
  return dt;
}

ConvergenceResult run_convergence_study(const RunConfig& cfg) {
  const ManufacturedCase mc = case_by_name(cfg.case_name);
  if (!mc.has_exact) throw ConfigError("case '" + mc.name + "' has no exact solution");
  ConvergenceResult result;
  std::vector<ErrorRow> rows;
  for (int n : cfg.meshes) {
    const auto space = phase_space_for(mc, n, cfg.kx, cfg.kv);
    MeshRun run;
    run.n = n;
    run.h = space->mesh().h();
    run.dt = choose_dt(cfg, *space, mc.u_bound);
    const SplittingSolver solver(space, StepConfig{run.dt, cfg.penalty, cfg.cfl_safety, true},
                                 sources_for(mc, cfg.force_periodic));
    SimulationState s = solver.initial_state(initial_field(mc, space));
    const double norm0 = l2_norm(s.f);
    run.min_rho = min_nodal_value(s.moments.rho);
    solver.run(s, cfg.t_final, [&](const SimulationState& st, const StepDiagnostics&) {
      run.stability_ratio = std::max(run.stability_ratio, l2_norm(st.f) / (std::exp(1.1 * st.t) * norm0));
      run.min_rho = std::min(run.min_rho, min_nodal_value(st.moments.rho));
    });
    run.steps = s.step;
    const double T = s.t;
    run.err_f = phase_error(mc, s.f, T);
    run.err_u = l2_error_velocity(s.u, [&](const Vec2& x) { return mc.u(T, x); });
    run.err_p = l2_error_pressure(s.p, [&](const Vec2& x) { return mc.p(T, x); });
    rows.push_back({run.h, run.err_f, run.err_u, run.err_p});
    result.runs.push_back(run);
  }
  result.table = eoc(rows);
  return result;
}

ConservationResult run_conservation_audit(const RunConfig& cfg) {
  const ManufacturedCase mc = case_by_name(cfg.case_name);
  const auto space = phase_space_for(mc, cfg.meshes.front(), cfg.kx, cfg.kv);
  const double dt = cfg.dt ? *cfg.dt : cfl_dt(*space, mc.u_bound, cfg.cfl_safety);
  const SplittingSolver solver(space, StepConfig{dt, cfg.penalty, cfg.cfl_safety, true}, Sources{});
  SimulationState s = solver.initial_state(initial_field(mc, space));
  ConservationResult r;
  auto sample = [&] {
    r.samples.push_back({s.t, conserved_quantities(s.f), min_nodal_value(s.moments.rho), l2_norm(s.f)});
  };
  sample();
  for (int i = 0; i < cfg.steps; ++i) {
    solver.lie_trotter_step(s, dt);
    sample();
  }
  const auto& q0 = r.samples.front();
  const double p0 = std::hypot(q0.q.momentum[0], q0.q.momentum[1]);
  const double p_scale = p0 > 0.0 ? p0 : std::abs(q0.q.mass);
  const bool momentum_applies = cfg.kv >= 1;
  r.momentum_drift = momentum_applies ? 0.0 : kNaN;
  for (const auto& smp : r.samples) {
    r.mass_drift = std::max(r.mass_drift, std::abs(smp.q.mass - q0.q.mass) / std::abs(q0.q.mass));
    if (momentum_applies)
      r.momentum_drift =
          std::max(r.momentum_drift,
                   std::hypot(smp.q.momentum[0] - q0.q.momentum[0], smp.q.momentum[1] - q0.q.momentum[1]) / p_scale);
    r.stability_ratio = std::max(r.stability_ratio, smp.norm_f / (std::exp(1.1 * smp.t) * q0.norm_f));
  }
  return r;
}

StokesStudy run_stokes_only(const RunConfig& cfg) {
  const ManufacturedCase mc = case_by_name(cfg.case_name);
  if (!mc.has_exact) throw ConfigError("case '" + mc.name + "' has no exact solution");
  StokesStudy st;
  const double t = 0.0;
  for (int n : cfg.meshes) {
    auto space = std::make_shared<const DGSpace2D>(build_mesh(mc.x_domain, {n, n}, {true, true}), cfg.kx);
    const ScalarField rho =
        project_scalar(space, [&](const Vec2& x) { return mc.rho(t, x); }, projection_quadrature_points(cfg.kx));
    const StokesSolver solver(space, cfg.penalty);
    const VectorFunction g = [&](const Vec2& x) {
      const Vec2 l = mc.minus_laplace_u(t, x), u = mc.u(t, x), gp = mc.grad_p(t, x);
      const double r = mc.rho(t, x);
      return Vec2{l[0] + r * u[0] + gp[0], l[1] + r * u[1] + gp[1]};
    };
    const StokesSolution sol = solver.solve(rho, nullptr, g);
    StokesRun run;
    run.h = space->mesh().max_width();
    run.err_u = l2_error_velocity(sol.u, [&](const Vec2& x) { return mc.u(t, x); });
    run.err_energy = energy_error_velocity(sol.u, [&](const Vec2& x) { return mc.grad_u(t, x); });
    run.err_p = l2_error_pressure(sol.p, [&](const Vec2& x) { return mc.p(t, x); });
    st.runs.push_back(run);
  }
  for (std::size_t i = 1; i < st.runs.size(); ++i) {
    st.eoc_u.push_back(log2_ratio(st.runs[i - 1].err_u, st.runs[i].err_u));
    st.eoc_energy.push_back(log2_ratio(st.runs[i - 1].err_energy, st.runs[i].err_energy));
    st.eoc_p.push_back(log2_ratio(st.runs[i - 1].err_p, st.runs[i].err_p));
  }
  return st;
}

std::vector<SimulationSample> run_simulation(const RunConfig& cfg) {
  const ManufacturedCase mc = case_by_name(cfg.case_name);
  const auto space = phase_space_for(mc, cfg.meshes.front(), cfg.kx, cfg.kv);
  const double dt = choose_dt(cfg, *space, mc.u_bound);
  const SplittingSolver solver(space, StepConfig{dt, cfg.penalty, cfg.cfl_safety, true},
                               sources_for(mc, cfg.force_periodic));
  SimulationState s = solver.initial_state(initial_field(mc, space));
  std::vector<SimulationSample> out;
  auto sample = [&](const SimulationState& st) {
    out.push_back({st.t, conserved_quantities(st.f), min_nodal_value(st.moments.rho), l2_norm(st.f),
                   mc.has_exact ? phase_error(mc, st.f, st.t) : kNaN});
  };
  sample(s);
  solver.run(s, cfg.t_final, [&](const SimulationState& st, const StepDiagnostics&) { sample(st); });
  return out;
}

std::string write_convergence_csv(const RunConfig& cfg, const ConvergenceResult& r) {
  std::ofstream out;
  const std::string path = open_csv(cfg, "convergence.csv", out);
  out << "h,errL2f,errL2u,errL2p,eoc_f,eoc_u,eoc_p\n";
  for (const auto& row : r.table.rows)
    out << num(row.h) << ',' << num(row.err_f) << ',' << num(row.err_u) << ',' << num(row.err_p) << ','
        << num(row.eoc_f) << ',' << num(row.eoc_u) << ',' << num(row.eoc_p) << '\n';
  return path;
}

std::string write_conservation_csv(const RunConfig& cfg, const ConservationResult& r) {
  std::ofstream out;
  const std::string path = open_csv(cfg, "conservation.csv", out);
  const bool momentum = !std::isnan(r.momentum_drift);
  out << "t,mass,momentum1,momentum2,energy,min_rho,norm_f\n";
  for (const auto& s : r.samples)
    out << num(s.t) << ',' << num(s.q.mass) << ',' << (momentum ? num(s.q.momentum[0]) : "NA") << ','
        << (momentum ? num(s.q.momentum[1]) : "NA") << ',' << num(s.q.energy) << ',' << num(s.min_rho) << ','
        << num(s.norm_f) << '\n';
  out << "# summary max_rel_mass_drift=" << num(r.mass_drift)
      << " max_rel_momentum_drift=" << (momentum ? num(r.momentum_drift) : "NA")
      << " max_norm_ratio=" << num(r.stability_ratio) << '\n';
  return path;
}

std::string write_stokes_csv(const RunConfig& cfg, const StokesStudy& r) {
  std::ofstream out;
  const std::string path = open_csv(cfg, "stokes.csv", out);
  out << "h,errL2u,errEnergyU,errL2p,eoc_u,eoc_energy,eoc_p\n";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& run = r.runs[i];
    out << num(run.h) << ',' << num(run.err_u) << ',' << num(run.err_energy) << ',' << num(run.err_p) << ','
        << num(i ? r.eoc_u[i - 1] : kNaN) << ',' << num(i ? r.eoc_energy[i - 1] : kNaN) << ','
        << num(i ? r.eoc_p[i - 1] : kNaN) << '\n';
  }
  return path;
}

std::string write_simulation_csv(const RunConfig& cfg, const std::vector<SimulationSample>& r) {
  std::ofstream out;
  const std::string path = open_csv(cfg, "simulation.csv", out);
  out << "t,mass,momentum1,momentum2,energy,min_rho,norm_f,errL2f\n";
  for (const auto& s : r)
    out << num(s.t) << ',' << num(s.q.mass) << ',' << num(s.q.momentum[0]) << ',' << num(s.q.momentum[1]) << ','
        << num(s.q.energy) << ',' << num(s.min_rho) << ',' << num(s.norm_f) << ',' << num(s.err_f) << '\n';
  return path;
}

}  // namespace vsdg::cli
