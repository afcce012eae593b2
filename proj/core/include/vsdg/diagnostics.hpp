#pragma once

#include <array>
#include <functional>
#include <vector>

#include "vsdg/fields.hpp"
#include "vsdg/stokes.hpp"
#include "vsdg/vlasov.hpp"

namespace vsdg {

struct ConservedQuantities {
  double mass = 0.0;
  Vec2 momentum{0.0, 0.0};
  /// 1/2 int |v|^2 f, integrated exactly for every k_v.
  double energy = 0.0;
};

ConservedQuantities conserved_quantities(const PhaseField& f);

/// L2(Omega) error against `exact` with `points` Gauss points per direction
/// (default k+3 for the larger degree).
double l2_error_phase(const PhaseField& fh, const PhaseFunction& exact, int points = 0);
/// Same norm for an exact solution given as a sum of separable terms; the
/// terms are sampled once per mesh cell instead of once per phase point.
double l2_error_phase(const PhaseField& fh, const std::vector<SeparableTerm>& exact, int points = 0);

double l2_error_velocity(const VelocityField& uh, const std::function<Vec2(const Vec2&)>& exact, int points = 0);
/// Error after removing the means of both pressures.
double l2_error_pressure(const PressureField& ph, const SpaceFunction& exact, int points = 0);
/// dG energy norm of u - u_h: broken H1 seminorm plus sum_F h^-1 ||[[u_h]]||^2.
/// `grad_exact` returns {du1/dx, du1/dy, du2/dx, du2/dy}.
double energy_error_velocity(const VelocityField& uh,
                             const std::function<std::array<double, 4>(const Vec2&)>& grad_exact,
                             int points = 0);

/// Smallest nodal value of a scalar field.
double min_nodal_value(const ScalarField& s);

/// int int |u - v|^2 f over Omega, exact for k_v >= 1.
double drag_dissipation(const VelocityField& u, const PhaseField& f);

/// |<rate, |v|^2/2> + B_out + a_h(u,u) + s_h(p,p) + int |u-v|^2 f - (G, u)| /
/// kinetic energy, where rate is the semi-discrete Vlasov residual and B_out
/// the kinetic energy leaving through the boundary of Omega_v. Requires
/// k_x, k_v >= 2; throws std::invalid_argument otherwise.
double energy_balance_residual(const PhaseField& f, const VelocityField& u, const PressureField& p,
                               const StokesSolver& stokes, const VectorFunction& g = {});

struct ErrorRow {
  double h = 0.0;
  double err_f = 0.0;
  double err_u = 0.0;
  double err_p = 0.0;
};

struct ConvergenceRow {
  double h, err_f, err_u, err_p;
  double eoc_f, eoc_u, eoc_p;  // NaN on the first row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// log2 error ratios between successive rows. Throws std::invalid_argument for
/// fewer than two rows or when h does not halve from row to row.
ConvergenceTable eoc(const std::vector<ErrorRow>& rows);

}  // namespace vsdg
