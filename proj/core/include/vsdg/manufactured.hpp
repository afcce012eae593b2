#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vsdg/mesh.hpp"
#include "vsdg/vlasov.hpp"

namespace vsdg {

using TimePhaseFunction = std::function<double(double t, const Vec2& x, const Vec2& v)>;
using TimeScalarFunction = std::function<double(double t, const Vec2& x)>;
using TimeVectorFunction = std::function<Vec2(double t, const Vec2& x)>;
using SeparableFamily = std::function<std::vector<SeparableTerm>(double t)>;

/// A test problem for the coupled system on Omega_x x Omega_v. Cases without
/// a known solution (has_exact == false) carry only f0 and zero sources.
struct ManufacturedCase {
  std::string name;
  Rectangle x_domain{{0.0, 0.0}, {1.0, 1.0}};
  Rectangle v_domain{{-1.0, -1.0}, {1.0, 1.0}};
  bool has_exact = true;
  /// False when f(t, ., v) is not periodic on Omega_x for t > 0; the solver
  /// then feeds the exact trace in at the wrap edges.
  bool x_periodic = true;
  bool zero_sources = false;
  /// Upper bound on |u_i| used for the a-priori CFL step.
  double u_bound = 1.0;

  TimePhaseFunction f;
  TimeVectorFunction u;
  TimeScalarFunction p;
  TimeScalarFunction rho;
  TimeVectorFunction rho_v;
  TimePhaseFunction F;
  TimeVectorFunction G;
  /// -Laplace(u); used by the Stokes-only study.
  TimeVectorFunction minus_laplace_u;
  /// Gradient of u: {du1/dx, du1/dy, du2/dx, du2/dy}.
  std::function<std::array<double, 4>(double t, const Vec2& x)> grad_u;
  TimeVectorFunction grad_p;

  /// f(t) and F(t) as sums of x-part * v-part.
  SeparableFamily f_terms;
  SeparableFamily F_terms;
};

/// The constants C = int m and C1 = int s m of the 1D velocity profile
/// m(s) = exp(-s^2)(1 - s^2)(1 + s) on [-1, 1], by 50-point Gauss quadrature.
struct ProfileMoments {
  double c0;
  double c1;
};
ProfileMoments profile_moments();

double velocity_profile(double s);
double velocity_profile_deriv(double s);

ManufacturedCase example_1();
ManufacturedCase example_2();
/// Interior-supported drifting bump with F = G = 0 for conservation audits.
ManufacturedCase bump_case();

/// "example1", "example2" or "bump"; throws std::invalid_argument otherwise.
ManufacturedCase case_by_name(const std::string& name);
std::vector<std::string> case_names();

struct DerivedSources {
  TimePhaseFunction F;
  TimeVectorFunction G;
};

/// F = f_t + v . grad_x f + div_v((u - v) f) and G = -Lap u + rho u + grad p -
/// rho V from fourth-order central differences of the callables; rho and rho V
/// come from a 20-point Gauss rule per velocity direction.
DerivedSources derive_sources(TimePhaseFunction f, TimeVectorFunction u, TimeScalarFunction p,
                              Rectangle v_domain, double step = 1e-3);

}  // namespace vsdg
