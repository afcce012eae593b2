#include "vsdg/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vsdg {

double cfl_dt(double h_x, double h_v, double v_max, double u_bound, int degree, double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("cfl_dt: safety must lie in (0, 1]");
  if (!(v_max > 0.0) || u_bound < 0.0) throw std::invalid_argument("cfl_dt: need v_max > 0 and u_bound >= 0");
  return safety * std::min(h_x / v_max, h_v / (u_bound + v_max)) / (2 * degree + 1);
}

double cfl_dt(const PhaseSpace& space, double u_bound, double safety) {
  const auto& vd = space.v()->mesh().domain();
  const double v_max = std::max({std::abs(vd.lower[0]), std::abs(vd.upper[0]), std::abs(vd.lower[1]),
                                 std::abs(vd.upper[1])});
  const int k = std::max(space.x()->degree(), space.v()->degree());
  return cfl_dt(space.mesh().h_x(), space.mesh().h_v(), v_max, u_bound, k, safety);
}

Sources sources_for(const ManufacturedCase& mc, bool force_periodic) {
  Sources s;
  if (!mc.zero_sources) {
    s.F = mc.F;
    s.F_terms = mc.F_terms;
    s.G = mc.G;
  }
  if (mc.has_exact && !mc.x_periodic && !force_periodic) s.x_inflow = mc.f;
  return s;
}

SplittingSolver::SplittingSolver(std::shared_ptr<const PhaseSpace> space, StepConfig cfg, Sources src)
    : space_(std::move(space)),
      cfg_(cfg),
      src_(std::move(src)),
      stokes_(space_->x(), cfg.penalty),
      transport_(space_) {}

SimulationState SplittingSolver::initial_state(PhaseField f0, double t0) const {
  SimulationState s;
  s.t = t0;
  s.f = std::move(f0);
  s.moments = compute_moments(s.f);
  VectorFunction g;
  if (src_.G) g = [G = src_.G, t0](const Vec2& x) { return G(t0, x); };
  StokesSolution sol = stokes_.solve(s.moments.rho, &s.moments.rho_v, g);
  s.u = std::move(sol.u);
  s.p = std::move(sol.p);
  return s;
}

StepDiagnostics SplittingSolver::lie_trotter_step(SimulationState& s, double dt) const {
  if (dt <= 0.0) dt = cfg_.dt;
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double t0 = s.t, t1 = s.t + dt;

  VectorFunction g;
  if (src_.G) g = [G = src_.G, t1](const Vec2& x) { return G(t1, x); };
  StokesSolution sol = stokes_.solve(s.moments.rho, &s.moments.rho_v, g);

  double max_u = 0.0;
  for (const auto& c : sol.u.comp)
    for (double x : c.values) max_u = std::max(max_u, std::abs(x));
  if (cfg_.check_cfl) {
    const double bound = cfl_dt(*space_, max_u, 1.0);
    if (dt > bound * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "time step " << dt << " exceeds the CFL bound " << bound << " for max|u_h| = " << max_u
          << " at t = " << t0;
      throw CflError(msg.str());
    }
  }

  PhaseField rate(space_);
  transport_.apply_v(sol.u, s.f, rate);
  PhaseField fstar = s.f;
  axpy(dt, rate, fstar);
  if (src_.F_terms) {
    axpy(dt, project_separable(space_, src_.F_terms(t0)), fstar);
  } else if (src_.F) {
    axpy(dt, project_initial(space_, [F = src_.F, t0](const Vec2& x, const Vec2& v) { return F(t0, x, v); }),
         fstar);
  }

  XInflow inflow;
  if (src_.x_inflow) inflow = [fx = src_.x_inflow, t0](const Vec2& x, const Vec2& v) { return fx(t0, x, v); };
  transport_.apply_x(fstar, rate, inflow);
  axpy(dt, rate, fstar);

  s.f = std::move(fstar);
  s.t = t1;
  ++s.step;
  s.u = std::move(sol.u);
  s.p = std::move(sol.p);
  s.moments = compute_moments(s.f);
  return {s.t, dt, max_u};
}

void SplittingSolver::run(SimulationState& s, double t_end,
                          const std::function<void(const SimulationState&, const StepDiagnostics&)>& observer) const {
  if (!(cfg_.dt > 0.0)) throw std::invalid_argument("run: configured dt must be positive");
  while (s.t < t_end) {
    const double remaining = t_end - s.t;
    const bool last = remaining <= cfg_.dt * (1.0 + 1e-9);
    StepDiagnostics d = lie_trotter_step(s, last ? remaining : cfg_.dt);
    if (last) s.t = d.t = t_end;
    if (observer) observer(s, d);
  }
}

}  // namespace vsdg
