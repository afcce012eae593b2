#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "vsdg/manufactured.hpp"

using namespace vsdg;

namespace {

constexpr double kPi = std::numbers::pi;

double m1d(double s) { return std::exp(-s * s) * (1 - s * s) * (1 + s); }
double m2d(const Vec2& v) { return m1d(v[0]) * m1d(v[1]); }

// Exact solutions written out directly from the published formulas.
double f_ex1(double t, const Vec2& x, const Vec2& v) {
  return std::sin(kPi * (x[0] - t)) * std::sin(kPi * (x[1] - t)) * m2d(v);
}
double f_ex2(double t, const Vec2& x, const Vec2& v) {
  return std::cos(t) * std::sin(2 * kPi * x[0]) * std::sin(2 * kPi * x[1]) * m2d(v);
}
Vec2 u_ex1(const Vec2& x) {
  return {-std::cos(2 * kPi * x[0]) * std::sin(2 * kPi * x[1]), std::sin(2 * kPi * x[0]) * std::cos(2 * kPi * x[1])};
}
Vec2 u_ex2(const Vec2& x) {
  const Vec2 u = u_ex1(x);
  return {u[0] + std::sin(2 * kPi * x[1]), u[1] - std::sin(2 * kPi * x[0])};
}
double p_ex(const Vec2& x) { return 2 * kPi * (std::cos(2 * kPi * x[1]) - std::cos(2 * kPi * x[0])); }

template <class Fn>
double central(Fn&& g, double s, double h = 1e-4) {
  return (-g(s + 2 * h) + 8 * g(s + h) - 8 * g(s - h) + g(s - 2 * h)) / (12 * h);
}

std::vector<std::pair<Vec2, Vec2>> samples(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> X(0.0, 1.0), V(-0.95, 0.95);
  std::vector<std::pair<Vec2, Vec2>> out;
  for (int i = 0; i < n; ++i) out.push_back({{X(rng), X(rng)}, {V(rng), V(rng)}});
  return out;
}

// Residual of the Vlasov equation for a case, by finite differences.
double vlasov_residual(const ManufacturedCase& c, double t, const Vec2& x, const Vec2& v) {
  const double ft = central([&](double s) { return c.f(s, x, v); }, t);
  double r = ft;
  const Vec2 u = c.u(t, x);
  for (int d = 0; d < 2; ++d) {
    r += v[d] * central([&](double s) { Vec2 y = x; y[d] = s; return c.f(t, y, v); }, x[d]);
    r += central([&](double s) {
      Vec2 w = v;
      w[d] = s;
      return (u[d] - s) * c.f(t, x, w);
    }, v[d]);
  }
  return r - c.F(t, x, v);
}

struct Moments {
  double rho;
  Vec2 mom;
};

Moments velocity_moments(const ManufacturedCase& c, double t, const Vec2& x) {
  const auto r = oracle::legendre_rule(40);
  Moments m{0.0, {0.0, 0.0}};
  for (std::size_t i = 0; i < r.x.size(); ++i)
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const Vec2 v{r.x[i], r.x[j]};
      const double w = r.w[i] * r.w[j] * c.f(t, x, v);
      m.rho += w;
      m.mom[0] += w * v[0];
      m.mom[1] += w * v[1];
    }
  return m;
}

}  // namespace

TEST(Profile, MatchesIndependentQuadrature) {
  const auto r = oracle::legendre_rule(60);
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    c0 += r.w[i] * m1d(r.x[i]);
    c1 += r.w[i] * r.x[i] * m1d(r.x[i]);
  }
  const ProfileMoments pm = profile_moments();
  EXPECT_NEAR(pm.c0, c0, 1e-14);
  EXPECT_NEAR(pm.c1, c1, 1e-14);
  // Odd part of m vanishes against 1, so C0 = int exp(-s^2)(1 - s^2).
  EXPECT_NEAR(pm.c0, std::sqrt(kPi) * std::erf(1.0) - (std::sqrt(kPi) * std::erf(1.0) / 2 - std::exp(-1.0)), 1e-13);
  for (double s : {-1.0, -0.4, 0.0, 0.3, 1.0}) {
    EXPECT_DOUBLE_EQ(velocity_profile(s), m1d(s));
    EXPECT_NEAR(velocity_profile_deriv(s), central(m1d, s), 1e-9);
  }
  EXPECT_EQ(velocity_profile(1.0), 0.0);
  EXPECT_EQ(velocity_profile(-1.0), 0.0);
}

TEST(Example1, MatchesPublishedFormulas) {
  const ManufacturedCase c = example_1();
  EXPECT_TRUE(c.has_exact);
  EXPECT_FALSE(c.x_periodic);
  for (const auto& [x, v] : samples(20, 1))
    for (double t : {0.0, 0.05, 0.1}) {
      EXPECT_NEAR(c.f(t, x, v), f_ex1(t, x, v), 1e-15);
      EXPECT_NEAR(c.u(t, x)[0], u_ex1(x)[0], 1e-15);
      EXPECT_NEAR(c.u(t, x)[1], u_ex1(x)[1], 1e-15);
      EXPECT_NEAR(c.p(t, x), p_ex(x), 1e-14);
    }
}

TEST(Example2, MatchesPublishedFormulas) {
  const ManufacturedCase c = example_2();
  EXPECT_TRUE(c.x_periodic);
  for (const auto& [x, v] : samples(20, 2))
    for (double t : {0.0, 0.01, 0.1}) {
      EXPECT_NEAR(c.f(t, x, v), f_ex2(t, x, v), 1e-15);
      EXPECT_NEAR(c.u(t, x)[0], u_ex2(x)[0], 1e-15);
      EXPECT_NEAR(c.u(t, x)[1], u_ex2(x)[1], 1e-15);
      EXPECT_NEAR(c.p(t, x), p_ex(x), 1e-14);
    }
}

TEST(Examples, InitialData) {
  for (const auto& [x, v] : samples(10, 3)) {
    EXPECT_NEAR(example_1().f(0.0, x, v), std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * m2d(v), 1e-15);
    EXPECT_NEAR(example_2().f(0.0, x, v), std::sin(2 * kPi * x[0]) * std::sin(2 * kPi * x[1]) * m2d(v), 1e-15);
  }
}

TEST(Examples, VelocityIsDivergenceFreeAndPressureHasZeroMean) {
  for (const ManufacturedCase& c : {example_1(), example_2()}) {
    for (const auto& [x, v] : samples(10, 4)) {
      const double div = central([&](double s) { return c.u(0.0, {s, x[1]})[0]; }, x[0]) +
                         central([&](double s) { return c.u(0.0, {x[0], s})[1]; }, x[1]);
      EXPECT_NEAR(div, 0.0, 1e-9) << c.name;
      const auto g = c.grad_u(0.0, x);
      EXPECT_NEAR(g[0] + g[3], 0.0, 1e-12);
      EXPECT_NEAR(g[1], central([&](double s) { return c.u(0.0, {x[0], s})[0]; }, x[1]), 1e-8);
      EXPECT_NEAR(g[2], central([&](double s) { return c.u(0.0, {s, x[1]})[1]; }, x[0]), 1e-8);
      const Vec2 gp = c.grad_p(0.0, x);
      EXPECT_NEAR(gp[0], central([&](double s) { return c.p(0.0, {s, x[1]}); }, x[0]), 1e-8);
      EXPECT_NEAR(gp[1], central([&](double s) { return c.p(0.0, {x[0], s}); }, x[1]), 1e-8);
      const double h = 1e-3;
      for (int d = 0; d < 2; ++d) {
        double lap = 0.0;
        for (int a = 0; a < 2; ++a) {
          Vec2 xp = x, xm = x;
          xp[a] += h;
          xm[a] -= h;
          lap += (c.u(0.0, xp)[d] - 2 * c.u(0.0, x)[d] + c.u(0.0, xm)[d]) / (h * h);
        }
        EXPECT_NEAR(c.minus_laplace_u(0.0, x)[d], -lap, 1e-2);
      }
    }
    const auto r = oracle::legendre_rule(12);
    double mean = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i)
      for (std::size_t j = 0; j < r.x.size(); ++j) mean += r.w[i] * r.w[j] / 4 * c.p(0.0, {(r.x[i] + 1) / 2, (r.x[j] + 1) / 2});
    EXPECT_NEAR(mean, 0.0, 1e-13);
  }
}

TEST(Examples, DensityAndMomentumMatchQuadrature) {
  for (const ManufacturedCase& c : {example_1(), example_2()})
    for (const auto& [x, v] : samples(8, 5))
      for (double t : {0.0, 0.07}) {
        const Moments m = velocity_moments(c, t, x);
        EXPECT_NEAR(c.rho(t, x), m.rho, 1e-13) << c.name;
        EXPECT_NEAR(c.rho_v(t, x)[0], m.mom[0], 1e-13);
        EXPECT_NEAR(c.rho_v(t, x)[1], m.mom[1], 1e-13);
      }
}

TEST(Examples, SourcesSolveTheCoupledEquations) {
  for (const ManufacturedCase& c : {example_1(), example_2()})
    for (const auto& [x, v] : samples(15, 6))
      for (double t : {0.0, 0.1}) {
        EXPECT_NEAR(vlasov_residual(c, t, x, v), 0.0, 1e-8) << c.name;
        // -Lap u + rho u + grad p - rho V = G
        const Vec2 u = c.u(t, x), g = c.G(t, x), gp = c.grad_p(t, x), lap = c.minus_laplace_u(t, x);
        const Moments m = velocity_moments(c, t, x);
        for (int d = 0; d < 2; ++d) EXPECT_NEAR(lap[d] + m.rho * u[d] + gp[d] - m.mom[d], g[d], 1e-11) << c.name;
      }
}

TEST(Examples, SeparableTermsReassembleFAndF) {
  for (const ManufacturedCase& c : {example_1(), example_2(), bump_case()})
    for (double t : {0.0, 0.04}) {
      const auto ft = c.f_terms(t), Ft = c.F_terms(t);
      for (const auto& [x, v] : samples(10, 7)) {
        double fs = 0.0, Fs = 0.0;
        for (const auto& term : ft) fs += term.x_part(x) * term.v_part(v);
        for (const auto& term : Ft) Fs += term.x_part(x) * term.v_part(v);
        EXPECT_NEAR(fs, c.f(t, x, v), 1e-14) << c.name;
        EXPECT_NEAR(Fs, c.F(t, x, v), 1e-12) << c.name;
      }
    }
}

TEST(DeriveSources, AgreesWithClosedFormSources) {
  for (const ManufacturedCase& c : {example_1(), example_2()}) {
    const DerivedSources d = derive_sources(c.f, c.u, c.p, c.v_domain);
    for (const auto& [x, v] : samples(10, 8)) {
      EXPECT_NEAR(d.F(0.1, x, v), c.F(0.1, x, v), 1e-8) << c.name;
      EXPECT_NEAR(d.G(0.1, x)[0], c.G(0.1, x)[0], 1e-6) << c.name;
      EXPECT_NEAR(d.G(0.1, x)[1], c.G(0.1, x)[1], 1e-6) << c.name;
    }
  }
}

TEST(DeriveSources, SteadyEquilibriumHasZeroSources) {
  // f = 0, u = 0, p = 0 gives F = 0 and G = 0.
  const DerivedSources d = derive_sources([](double, const Vec2&, const Vec2&) { return 0.0; },
                                          [](double, const Vec2&) { return Vec2{0.0, 0.0}; },
                                          [](double, const Vec2&) { return 0.0; }, {{-1.0, -1.0}, {1.0, 1.0}});
  EXPECT_EQ(d.F(0.3, {0.2, 0.4}, {0.1, -0.5}), 0.0);
  EXPECT_EQ(d.G(0.3, {0.2, 0.4})[0], 0.0);
  EXPECT_EQ(d.G(0.3, {0.2, 0.4})[1], 0.0);
}

TEST(BumpCase, CompactSupportAndZeroSources) {
  const ManufacturedCase c = bump_case();
  EXPECT_FALSE(c.has_exact);
  EXPECT_TRUE(c.zero_sources);
  for (const auto& [x, v] : samples(10, 9)) {
    EXPECT_EQ(c.F(0.0, x, v), 0.0);
    EXPECT_EQ(c.G(0.0, x)[0], 0.0);
    EXPECT_GE(c.f(0.0, x, v), 0.0);
    for (double s : {-1.0, 1.0}) {
      EXPECT_EQ(c.f(0.0, x, {s, v[1]}), 0.0);
      EXPECT_EQ(c.f(0.0, x, {v[0], s}), 0.0);
    }
  }
}

TEST(CaseRegistry, NamesAndErrors) {
  for (const auto& n : case_names()) EXPECT_EQ(case_by_name(n).name, n);
  EXPECT_EQ(case_names().size(), 3u);
  EXPECT_THROW(case_by_name("example3"), std::invalid_argument);
}
