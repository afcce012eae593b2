#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vsdg/fields.hpp"

namespace vsdg {

/// Upwind numerical flux for a transport speed c = speed . n on an edge:
/// c {f} + |c|/2 (f- - f+).
inline double upwind_flux(double f_minus, double f_plus, double speed_n) {
  const double a = speed_n < 0.0 ? -speed_n : speed_n;
  return 0.5 * speed_n * (f_minus + f_plus) + 0.5 * a * (f_minus - f_plus);
}

/// Flux of the x-transport v . n f.
inline double upwind_flux_x(double f_minus, double f_plus, const Vec2& v, const Vec2& n) {
  return upwind_flux(f_minus, f_plus, v[0] * n[0] + v[1] * n[1]);
}

/// Flux of the v-transport (u - v) . n f.
inline double upwind_flux_v(double f_minus, double f_plus, const Vec2& u, const Vec2& v, const Vec2& n) {
  return upwind_flux(f_minus, f_plus, (u[0] - v[0]) * n[0] + (u[1] - v[1]) * n[1]);
}

using PhaseFunction = std::function<double(const Vec2& x, const Vec2& v)>;
using SpaceFunction = std::function<double(const Vec2& x)>;

/// One product term x_part(x) * v_part(v) of a separable phase-space function.
struct SeparableTerm {
  SpaceFunction x_part;
  SpaceFunction v_part;
};

/// Element-wise L2 projection of f0 onto Z_h with `points` Gauss points per
/// direction (default k+3 for the larger of the two degrees).
PhaseField project_initial(const std::shared_ptr<const PhaseSpace>& space, const PhaseFunction& f0,
                           int points = 0);

/// L2 projection of a sum of separable terms; exact tensorization of
/// project_initial.
PhaseField project_separable(const std::shared_ptr<const PhaseSpace>& space,
                             const std::vector<SeparableTerm>& terms, int points = 0);

/// rho_h and (rho V)_h of f_h, integrated exactly in v.
MomentPair compute_moments(const PhaseField& f);

/// Exterior state used on the wrap edges of the x-torus when the transported
/// solution is not periodic. Empty means periodic fluxes.
using XInflow = PhaseFunction;

/// Matrix-free dG transport operators on a fixed phase space. Each apply
/// returns the mass-inverted weak residual r with (r, psi) = -B(f, psi).
class TransportOperator {
 public:
  explicit TransportOperator(std::shared_ptr<const PhaseSpace> space);

  const std::shared_ptr<const PhaseSpace>& space() const { return space_; }
  /// Gauss points per direction on x-cells used by the v-transport.
  int x_quadrature_points() const { return qx_; }

  /// x-transport with speed v, solved per fixed v-node. `rate` is overwritten.
  void apply_x(const PhaseField& f, PhaseField& rate, const XInflow& inflow = {}) const;
  /// v-transport with speed u_h(x) - v, zero exterior state on the boundary of
  /// Omega_v. `rate` is overwritten.
  void apply_v(const VelocityField& u, const PhaseField& f, PhaseField& rate) const;

  /// Outflow through the boundary of Omega_v weighted by psi(v):
  /// sum over x of the integral of max((u - v).n, 0) f psi on the boundary.
  double v_boundary_outflow(const VelocityField& u, const PhaseField& f, const SpaceFunction& psi) const;

 private:
  void interpolate_to_x_points(const PhaseField& f, int ix, std::vector<double>& g) const;

  std::shared_ptr<const PhaseSpace> space_;
  int qx_;
  // x tables (collocated)
  std::vector<double> dx_;       // dx_[a*n + q] = w_q l'_a(xi_q) / w_a
  std::vector<double> xlo_, xhi_;  // l_a(-1), l_a(+1)
  // v tables (collocated)
  std::vector<double> dv_;
  std::vector<double> vlo_, vhi_;
  // x-quadrature tables for the v-transport
  std::vector<double> interp_;   // interp_[q*npx + a] = L_a(xi_q)
  std::vector<double> project_;  // project_[a*nq + q] = W_q L_a(xi_q) / w_a
  std::vector<double> qweight_;  // W_q * |T^x| / 4
  // v-node coordinates per v-cell: vnode_[(iv*npv + b)*2 + d]
  std::vector<double> vnode_;
};

PhaseField apply_x_transport(const PhaseField& f, const XInflow& inflow = {});
PhaseField apply_v_transport(const VelocityField& u, const PhaseField& f);
/// Sum of the two split operators: the full semi-discrete Vlasov residual.
PhaseField apply_semi_discrete(const VelocityField& u, const PhaseField& f);

}  // namespace vsdg
