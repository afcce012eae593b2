#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oracle.hpp"
#include "vsdg/quadrature.hpp"

using namespace vsdg;

TEST(GaussRule, MidpointAndTwoPoint) {
  const auto r1 = gauss_rule(1);
  ASSERT_EQ(r1.size(), 1);
  EXPECT_NEAR(r1.points[0], 0.0, 1e-16);
  EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);
  const auto r2 = gauss_rule(2);
  EXPECT_NEAR(r2.points[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.points[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(r2.weights[1], 1.0, 1e-15);
}

TEST(GaussRule, OddMonomialVanishes) {
  const auto r = gauss_rule(5);
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i], 9);
  EXPECT_NEAR(s, 0.0, 1e-14);
}

TEST(GaussRule, ExactForDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const auto r = gauss_rule(n);
    double wsum = 0.0;
    for (double w : r.weights) {
      EXPECT_GT(w, 0.0);
      wsum += w;
    }
    EXPECT_NEAR(wsum, 2.0, 1e-13);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.points[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussRule, MatchesNewtonOracle) {
  for (int n = 1; n <= 10; ++n) {
    const auto r = gauss_rule(n);
    const auto o = oracle::legendre_rule(n);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(r.points[i], o.x[i], 1e-14);
      EXPECT_NEAR(r.weights[i], o.w[i], 1e-14);
    }
  }
}

TEST(GaussRule, RejectsZeroPoints) { EXPECT_THROW(gauss_rule(0), std::invalid_argument); }

TEST(NodalBasis, LagrangeAndPartitionOfUnity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int k = 0; k <= 6; ++k) {
    const NodalBasis1D b(k);
    ASSERT_EQ(b.size(), k + 1);
    for (int i = 0; i <= k; ++i) {
      const auto v = eval_basis(b, b.nodes()[i]);
      for (int j = 0; j <= k; ++j) EXPECT_NEAR(v[j], i == j ? 1.0 : 0.0, 1e-13);
    }
    for (int t = 0; t < 10; ++t) {
      const double xi = U(rng);
      double s = 0.0, ds = 0.0;
      for (double x : eval_basis(b, xi)) s += x;
      for (double x : eval_basis_deriv(b, xi)) ds += x;
      EXPECT_NEAR(s, 1.0, 1e-13);
      EXPECT_NEAR(ds, 0.0, 1e-12);
    }
  }
}

TEST(NodalBasis, LinearNodesAndFirstNode) {
  const NodalBasis1D b(1);
  EXPECT_NEAR(b.nodes()[0], -1.0 / std::sqrt(3.0), 1e-15);
  const auto v = eval_basis(b, b.nodes()[0]);
  EXPECT_NEAR(v[0], 1.0, 1e-15);
  EXPECT_NEAR(v[1], 0.0, 1e-15);
}

TEST(NodalBasis, ConstantBasis) {
  const NodalBasis1D b(0);
  for (double xi : {-1.0, -0.2, 0.7, 1.0}) {
    EXPECT_DOUBLE_EQ(eval_basis(b, xi)[0], 1.0);
    EXPECT_DOUBLE_EQ(eval_basis_deriv(b, xi)[0], 0.0);
  }
}

TEST(NodalBasis, QuadraticMatchesMonomialOracle) {
  // Nodes 0, +-sqrt(3/5): l_a(x) = prod (x - x_j)/(x_a - x_j) expanded in monomials.
  const NodalBasis1D b(2);
  const double s = std::sqrt(0.6);
  const double nodes[3] = {-s, 0.0, s};
  for (double xi : {0.0, 0.3, -0.85, 1.0}) {
    const auto v = eval_basis(b, xi);
    // l_0 = x(x - s)/(2 s^2), l_1 = 1 - x^2/s^2, l_2 = x(x + s)/(2 s^2)
    EXPECT_NEAR(v[0], (xi * xi - s * xi) / (2 * s * s), 1e-14);
    EXPECT_NEAR(v[1], 1.0 - xi * xi / (s * s), 1e-14);
    EXPECT_NEAR(v[2], (xi * xi + s * xi) / (2 * s * s), 1e-14);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(b.nodes()[a], nodes[a], 1e-15);
  }
}

TEST(NodalBasis, CubicDerivativeMatchesFiniteDifferences) {
  const NodalBasis1D b(3);
  const double step = 1e-6;
  for (double xi : {-0.9, -0.31, 0.0, 0.42, 0.97}) {
    const auto d = eval_basis_deriv(b, xi);
    const auto p = eval_basis(b, xi + step), m = eval_basis(b, xi - step);
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(d[a], (p[a] - m[a]) / (2 * step), 1e-6);
  }
}

TEST(NodalBasis, AgreesWithProductFormulaOracle) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int k = 1; k <= 5; ++k) {
    const NodalBasis1D b(k);
    for (int t = 0; t < 20; ++t) {
      const double xi = U(rng);
      const auto v = eval_basis(b, xi), d = eval_basis_deriv(b, xi);
      for (int a = 0; a <= k; ++a) {
        EXPECT_NEAR(v[a], oracle::lagrange(b.nodes(), a, xi), 1e-13);
        EXPECT_NEAR(d[a], oracle::lagrange_deriv(b.nodes(), a, xi), 1e-11);
      }
    }
  }
}

TEST(NodalBasis, TensorValuesMatchMonomialExpansion) {
  // A random Q_2 polynomial given by monomial coefficients, interpolated at the
  // tensor nodes, must evaluate identically through the product basis.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const NodalBasis1D b(2);
  double c[3][3];
  for (auto& row : c)
    for (double& x : row) x = U(rng);
  auto poly = [&](double x, double y) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += c[i][j] * std::pow(x, i) * std::pow(y, j);
    return s;
  };
  std::vector<double> coef(9);
  for (int a1 = 0; a1 < 3; ++a1)
    for (int a0 = 0; a0 < 3; ++a0) coef[a0 + 3 * a1] = poly(b.nodes()[a0], b.nodes()[a1]);
  for (int t = 0; t < 20; ++t) {
    const double x = U(rng), y = U(rng);
    const auto lx = eval_basis(b, x), ly = eval_basis(b, y);
    double s = 0.0;
    for (int a1 = 0; a1 < 3; ++a1)
      for (int a0 = 0; a0 < 3; ++a0) s += coef[a0 + 3 * a1] * lx[a0] * ly[a1];
    EXPECT_NEAR(s, poly(x, y), 1e-13);
  }
}

TEST(NodalBasis, CollocatedMassIsDiagonal) {
  for (int k = 0; k <= 5; ++k) {
    const NodalBasis1D b(k);
    const auto r = gauss_rule(k + 1);
    const auto t = tabulate(b, r);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        double m = 0.0;
        for (int q = 0; q < r.size(); ++q) m += r.weights[q] * t.value[q * (k + 1) + i] * t.value[q * (k + 1) + j];
        EXPECT_NEAR(m, i == j ? b.node_weights()[i] : 0.0, 1e-13);
      }
  }
}

TEST(NodalBasis, TracesAtEndpoints) {
  const NodalBasis1D b(2);
  const auto t = tabulate(b, gauss_rule(3));
  const auto lo = eval_basis(b, -1.0), hi = eval_basis(b, 1.0);
  for (int a = 0; a < 3; ++a) {
    EXPECT_DOUBLE_EQ(t.trace_lo[a], lo[a]);
    EXPECT_DOUBLE_EQ(t.trace_hi[a], hi[a]);
  }
}

TEST(L2Projection, ReproducesConstantsAndPolynomials) {
  for (int k = 0; k <= 4; ++k) {
    const NodalBasis1D b(k);
    const auto quad = gauss_rule(k + 2);
    const auto one = l2_project_element([](double, double) { return 1.0; }, b, quad);
    for (double c : one) EXPECT_NEAR(c, 1.0, 1e-13);
    auto p = [k](double x, double y) { return std::pow(x, k) * std::pow(y, k) - 0.5 * std::pow(y, k) + x; };
    const auto c = l2_project_element(p, b, quad);
    for (int a1 = 0; a1 <= k; ++a1)
      for (int a0 = 0; a0 <= k; ++a0)
        EXPECT_NEAR(c[a0 + (k + 1) * a1], p(b.nodes()[a0], b.nodes()[a1]), 1e-12) << k;
  }
}

TEST(L2Projection, SineMatchesNormalEquationsOracle) {
  // Dense normal equations M c = r with a 20-point rule and product-formula
  // Lagrange polynomials on the same nodes.
  const int k = 2;
  const NodalBasis1D b(k);
  auto target = [](double x) { return std::sin(std::numbers::pi * x); };
  const auto c = l2_project_element_1d(target, b, gauss_rule(20));
  const auto q = oracle::legendre_rule(20);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(k + 1);
  for (int i = 0; i < 20; ++i)
    for (int a = 0; a <= k; ++a) {
      const double la = oracle::lagrange(b.nodes(), a, q.x[i]);
      r[a] += q.w[i] * la * target(q.x[i]);
      for (int m = 0; m <= k; ++m) M(a, m) += q.w[i] * la * oracle::lagrange(b.nodes(), m, q.x[i]);
    }
  const Eigen::VectorXd ref = M.ldlt().solve(r);
  for (int a = 0; a <= k; ++a) EXPECT_NEAR(c[a], ref[a], 1e-12);
}

TEST(QuadratureChoice, DefaultRuleIntegratesTripleProducts) {
  for (int k = 0; k <= 5; ++k) {
    const int n = default_quadrature_points(k);
    EXPECT_GE(2 * n - 1, 3 * k) << k;
    EXPECT_EQ(n, (3 * k + 3) / 2);
    EXPECT_EQ(projection_quadrature_points(k), k + 3);
  }
}
