#include "vsdg/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vsdg/quadrature.hpp"

namespace vsdg {

namespace {

constexpr double pi = std::numbers::pi;

double d1(const std::function<double(double)>& g, double x, double h) {
  return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

double d2(const std::function<double(double)>& g, double x, double h) {
  return (-g(x + 2 * h) + 16 * g(x + h) - 30 * g(x) + 16 * g(x - h) - g(x - 2 * h)) / (12 * h * h);
}

// Spatial factor S(t, x) of f = S(t, x) M(v).
struct SpatialFactor {
  TimeScalarFunction s;
  TimeScalarFunction s_t;
  TimeVectorFunction grad;
};

struct Flow {
  TimeVectorFunction u;
  std::function<std::array<double, 4>(double, const Vec2&)> grad_u;
  TimeVectorFunction minus_laplace_u;
};

double profile_2d(const Vec2& v) { return velocity_profile(v[0]) * velocity_profile(v[1]); }

double pressure(double, const Vec2& x) { return 2 * pi * (std::cos(2 * pi * x[1]) - std::cos(2 * pi * x[0])); }

Vec2 pressure_gradient(double, const Vec2& x) {
  return {4 * pi * pi * std::sin(2 * pi * x[0]), -4 * pi * pi * std::sin(2 * pi * x[1])};
}

ManufacturedCase product_case(std::string name, SpatialFactor S, Flow flow, double u_bound, bool periodic) {
  const ProfileMoments pm = profile_moments();
  const double c0 = pm.c0, c1 = pm.c1;
  ManufacturedCase mc;
  mc.name = std::move(name);
  mc.x_periodic = periodic;
  mc.u_bound = u_bound;
  mc.f = [S](double t, const Vec2& x, const Vec2& v) { return S.s(t, x) * profile_2d(v); };
  mc.u = flow.u;
  mc.grad_u = flow.grad_u;
  mc.minus_laplace_u = flow.minus_laplace_u;
  mc.p = pressure;
  mc.grad_p = pressure_gradient;
  mc.rho = [S, c0](double t, const Vec2& x) { return S.s(t, x) * c0 * c0; };
  mc.rho_v = [S, c0, c1](double t, const Vec2& x) {
    const double s = S.s(t, x);
    return Vec2{s * c1 * c0, s * c0 * c1};
  };
  mc.F = [S, flow](double t, const Vec2& x, const Vec2& v) {
    const double s = S.s(t, x);
    const Vec2 g = S.grad(t, x);
    const Vec2 u = flow.u(t, x);
    const double m0 = velocity_profile(v[0]), m1 = velocity_profile(v[1]);
    const double dm0 = velocity_profile_deriv(v[0]), dm1 = velocity_profile_deriv(v[1]);
    const double M = m0 * m1;
    return M * (S.s_t(t, x) + v[0] * g[0] + v[1] * g[1]) +
           s * ((u[0] - v[0]) * dm0 * m1 + (u[1] - v[1]) * m0 * dm1 - 2.0 * M);
  };
  mc.G = [S, flow, c0, c1](double t, const Vec2& x) {
    const double rho = S.s(t, x) * c0 * c0;
    const double mom = S.s(t, x) * c0 * c1;
    const Vec2 lap = flow.minus_laplace_u(t, x);
    const Vec2 u = flow.u(t, x);
    const Vec2 gp = pressure_gradient(t, x);
    return Vec2{lap[0] + rho * u[0] + gp[0] - mom, lap[1] + rho * u[1] + gp[1] - mom};
  };
  mc.f_terms = [S](double t) {
    return std::vector<SeparableTerm>{{[S, t](const Vec2& x) { return S.s(t, x); }, profile_2d}};
  };
  mc.F_terms = [S, flow](double t) {
    auto u = flow.u;
    std::vector<SeparableTerm> terms;
    terms.push_back({[S, t](const Vec2& x) { return S.s_t(t, x); }, profile_2d});
    terms.push_back({[S, t](const Vec2& x) { return S.grad(t, x)[0]; },
                     [](const Vec2& v) { return v[0] * profile_2d(v); }});
    terms.push_back({[S, t](const Vec2& x) { return S.grad(t, x)[1]; },
                     [](const Vec2& v) { return v[1] * profile_2d(v); }});
    terms.push_back({[S, u, t](const Vec2& x) { return S.s(t, x) * u(t, x)[0]; },
                     [](const Vec2& v) { return velocity_profile_deriv(v[0]) * velocity_profile(v[1]); }});
    terms.push_back({[S, u, t](const Vec2& x) { return S.s(t, x) * u(t, x)[1]; },
                     [](const Vec2& v) { return velocity_profile(v[0]) * velocity_profile_deriv(v[1]); }});
    terms.push_back({[S, t](const Vec2& x) { return S.s(t, x); }, [](const Vec2& v) {
                       const double m0 = velocity_profile(v[0]), m1 = velocity_profile(v[1]);
                       return -v[0] * velocity_profile_deriv(v[0]) * m1 -
                              v[1] * m0 * velocity_profile_deriv(v[1]) - 2.0 * m0 * m1;
                     }});
    return terms;
  };
  return mc;
}

Flow cellular_flow(bool shear) {
  Flow fl;
  fl.u = [shear](double, const Vec2& x) {
    const double a = 2 * pi * x[0], b = 2 * pi * x[1];
    Vec2 u{-std::cos(a) * std::sin(b), std::sin(a) * std::cos(b)};
    if (shear) {
      u[0] += std::sin(b);
      u[1] -= std::sin(a);
    }
    return u;
  };
  fl.grad_u = [shear](double, const Vec2& x) {
    const double a = 2 * pi * x[0], b = 2 * pi * x[1];
    std::array<double, 4> g{2 * pi * std::sin(a) * std::sin(b), -2 * pi * std::cos(a) * std::cos(b),
                            2 * pi * std::cos(a) * std::cos(b), -2 * pi * std::sin(a) * std::sin(b)};
    if (shear) {
      g[1] += 2 * pi * std::cos(b);
      g[2] -= 2 * pi * std::cos(a);
    }
    return g;
  };
  fl.minus_laplace_u = [shear](double, const Vec2& x) {
    const double a = 2 * pi * x[0], b = 2 * pi * x[1];
    Vec2 r{-8 * pi * pi * std::cos(a) * std::sin(b), 8 * pi * pi * std::sin(a) * std::cos(b)};
    if (shear) {
      r[0] += 4 * pi * pi * std::sin(b);
      r[1] -= 4 * pi * pi * std::sin(a);
    }
    return r;
  };
  return fl;
}

}  // namespace

double velocity_profile(double s) { return std::exp(-s * s) * (1.0 - s * s) * (1.0 + s); }

double velocity_profile_deriv(double s) {
  return std::exp(-s * s) * (1.0 - 4.0 * s - 5.0 * s * s + 2.0 * s * s * s + 2.0 * s * s * s * s);
}

ProfileMoments profile_moments() {
  static const ProfileMoments pm = [] {
    const QuadratureRule g = gauss_rule(50);
    ProfileMoments r{0.0, 0.0};
    for (int i = 0; i < g.size(); ++i) {
      const double m = velocity_profile(g.points[i]);
      r.c0 += g.weights[i] * m;
      r.c1 += g.weights[i] * g.points[i] * m;
    }
    return r;
  }();
  return pm;
}

ManufacturedCase example_1() {
  SpatialFactor S;
  S.s = [](double t, const Vec2& x) { return std::sin(pi * (x[0] - t)) * std::sin(pi * (x[1] - t)); };
  S.s_t = [](double t, const Vec2& x) {
    const double a = pi * (x[0] - t), b = pi * (x[1] - t);
    return -pi * (std::cos(a) * std::sin(b) + std::sin(a) * std::cos(b));
  };
  S.grad = [](double t, const Vec2& x) {
    const double a = pi * (x[0] - t), b = pi * (x[1] - t);
    return Vec2{pi * std::cos(a) * std::sin(b), pi * std::sin(a) * std::cos(b)};
  };
  return product_case("example1", S, cellular_flow(false), 1.0, false);
}

ManufacturedCase example_2() {
  SpatialFactor S;
  S.s = [](double t, const Vec2& x) {
    return std::cos(t) * std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]);
  };
  S.s_t = [](double t, const Vec2& x) {
    return -std::sin(t) * std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]);
  };
  S.grad = [](double t, const Vec2& x) {
    const double a = 2 * pi * x[0], b = 2 * pi * x[1];
    return Vec2{2 * pi * std::cos(t) * std::cos(a) * std::sin(b), 2 * pi * std::cos(t) * std::sin(a) * std::cos(b)};
  };
  return product_case("example2", S, cellular_flow(true), 2.0, true);
}

ManufacturedCase bump_case() {
  constexpr double r = 0.5, a = 0.25, b = -0.15;
  auto beta = [](double s) {
    const double z = s / r;
    return std::abs(z) < 1.0 ? std::pow(1.0 - z * z, 3) : 0.0;
  };
  auto X = [](const Vec2& x) { return 1.0 + 0.5 * std::sin(2 * pi * x[0]) * std::cos(2 * pi * x[1]); };
  auto Y = [beta](const Vec2& v) { return beta(v[0] - a) * beta(v[1] - b); };
  ManufacturedCase mc;
  mc.name = "bump";
  mc.has_exact = false;
  mc.zero_sources = true;
  mc.u_bound = 1.0;
  mc.f = [X, Y](double, const Vec2& x, const Vec2& v) { return X(x) * Y(v); };
  mc.f_terms = [X, Y](double) { return std::vector<SeparableTerm>{{X, Y}}; };
  mc.F = [](double, const Vec2&, const Vec2&) { return 0.0; };
  mc.G = [](double, const Vec2&) { return Vec2{0.0, 0.0}; };
  mc.F_terms = [](double) { return std::vector<SeparableTerm>{}; };
  return mc;
}

std::vector<std::string> case_names() { return {"example1", "example2", "bump"}; }

ManufacturedCase case_by_name(const std::string& name) {
  if (name == "example1") return example_1();
  if (name == "example2") return example_2();
  if (name == "bump") return bump_case();
  throw std::invalid_argument("unknown case '" + name + "' (expected example1, example2 or bump)");
}

DerivedSources derive_sources(TimePhaseFunction f, TimeVectorFunction u, TimeScalarFunction p,
                              Rectangle v_domain, double step) {
  DerivedSources out;
  const double h = step;
  out.F = [f, u, h](double t, const Vec2& x, const Vec2& v) {
    const double ft = d1([&](double s) { return f(s, x, v); }, t, h);
    double adv = 0.0, drift = 0.0;
    const Vec2 uu = u(t, x);
    for (int d = 0; d < 2; ++d) {
      adv += v[d] * d1([&](double s) { Vec2 y = x; y[d] = s; return f(t, y, v); }, x[d], h);
      drift += (uu[d] - v[d]) * d1([&](double s) { Vec2 w = v; w[d] = s; return f(t, x, w); }, v[d], h);
    }
    return ft + adv + drift - 2.0 * f(t, x, v);
  };
  const QuadratureRule g = gauss_rule(20);
  out.G = [f, u, p, h, g, v_domain](double t, const Vec2& x) {
    double rho = 0.0;
    Vec2 mom{0.0, 0.0};
    const double j0 = 0.5 * (v_domain.upper[0] - v_domain.lower[0]);
    const double j1 = 0.5 * (v_domain.upper[1] - v_domain.lower[1]);
    for (int i = 0; i < g.size(); ++i)
      for (int k = 0; k < g.size(); ++k) {
        const Vec2 v{v_domain.lower[0] + (g.points[i] + 1.0) * j0, v_domain.lower[1] + (g.points[k] + 1.0) * j1};
        const double w = g.weights[i] * g.weights[k] * j0 * j1 * f(t, x, v);
        rho += w;
        mom[0] += w * v[0];
        mom[1] += w * v[1];
      }
    const Vec2 uu = u(t, x);
    Vec2 G{};
    for (int c = 0; c < 2; ++c) {
      double lap = 0.0;
      for (int d = 0; d < 2; ++d)
        lap += d2([&](double s) { Vec2 y = x; y[d] = s; return u(t, y)[c]; }, x[d], h);
      const double gp = d1([&](double s) { Vec2 y = x; y[c] = s; return p(t, y); }, x[c], h);
      G[c] = -lap + rho * uu[c] + gp - mom[c];
    }
    return G;
  };
  return out;
}

}  // namespace vsdg
