#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oracle.hpp"
#include "vsdg/stokes.hpp"

using namespace vsdg;

namespace {

const Rectangle kX{{0.0, 0.0}, {1.0, 1.0}};
constexpr double kPi = std::numbers::pi;

std::shared_ptr<const DGSpace2D> xspace(int n0, int n1, int k) {
  return std::make_shared<const DGSpace2D>(build_mesh(kX, {n0, n1}, {true, true}), k);
}

double rel_max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

Eigen::VectorXd vec(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

ScalarField density(const std::shared_ptr<const DGSpace2D>& s) {
  return project_scalar(s, [](const Vec2& x) { return 1.0 + 0.5 * std::sin(2 * kPi * x[0]) * std::cos(2 * kPi * x[1]); },
                        s->degree() + 3);
}

std::array<ScalarField, 2> momentum(const std::shared_ptr<const DGSpace2D>& s) {
  return {project_scalar(s, [](const Vec2& x) { return 0.3 + std::cos(2 * kPi * x[1]); }, s->degree() + 3),
          project_scalar(s, [](const Vec2& x) { return x[0] * (1 - x[0]); }, s->degree() + 3)};
}

const VectorFunction kForce = [](const Vec2& x) {
  return Vec2{std::sin(2 * kPi * x[0]) * std::sin(2 * kPi * x[1]), -0.4 + std::cos(2 * kPi * x[0])};
};

struct Shape {
  int n0, n1, k;
};

}  // namespace

class StokesBlocks : public ::testing::TestWithParam<Shape> {};

TEST_P(StokesBlocks, MatchDenseOracle) {
  const auto [n0, n1, k] = GetParam();
  const auto s = xspace(n0, n1, k);
  const oracle::Space o(kX, n0, n1, k, true);
  for (double theta : {4.0, 25.0})
    EXPECT_LE(rel_max_diff(oracle::to_dense(assemble_sip(*s, theta)), oracle::sip(o, theta)), 1e-12) << theta;
  for (int j = 0; j < 2; ++j)
    EXPECT_LE(rel_max_diff(oracle::to_dense(assemble_coupling(*s, j)), oracle::coupling(o, j)), 1e-12) << j;
  EXPECT_LE(rel_max_diff(oracle::to_dense(assemble_pressure_stab(*s)), oracle::pressure_stab(o)), 1e-12);
  const ScalarField rho = density(s);
  EXPECT_LE(rel_max_diff(oracle::to_dense(assemble_reaction(rho)), oracle::reaction(o, rho.values)), 1e-12);
}

TEST_P(StokesBlocks, ConstantsLieInTheKernels) {
  const auto [n0, n1, k] = GetParam();
  const auto s = xspace(n0, n1, k);
  const std::vector<double> one(s->num_dofs(), 1.0);
  for (double v : spmv(assemble_sip(*s, 10.0), one)) EXPECT_NEAR(v, 0.0, 1e-11);
  for (double v : spmv(assemble_pressure_stab(*s), one)) EXPECT_NEAR(v, 0.0, 1e-12);
  for (int j = 0; j < 2; ++j) {
    for (double v : spmv(assemble_coupling(*s, j), one)) EXPECT_NEAR(v, 0.0, 1e-12);
    // b(phi, 1) = 0 for every phi: constant pressures are in the kernel of B^T.
    const Eigen::VectorXd bt = oracle::to_dense(assemble_coupling(*s, j)).transpose() * Eigen::VectorXd::Ones(s->num_dofs());
    EXPECT_LE(bt.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_P(StokesBlocks, SymmetryAndDefiniteness) {
  const auto [n0, n1, k] = GetParam();
  const auto s = xspace(n0, n1, k);
  const SparseOperator A = assemble_sip(*s, 20.0), S = assemble_pressure_stab(*s);
  EXPECT_TRUE(A.is_symmetric(1e-12));
  EXPECT_TRUE(S.is_symmetric(1e-12));
  EXPECT_TRUE(assemble_reaction(density(s)).is_symmetric(1e-12));
  Eigen::VectorXd minv(s->num_dofs());
  for (int c = 0; c < s->num_cells(); ++c)
    for (int a = 0; a < s->nodes_per_cell(); ++a) minv[s->dof(c, a)] = 1.0 / std::sqrt(s->node_weight(a));
  // Generalized eigenvalues against the mass: one zero (constants), the rest
  // bounded away from zero for a large enough penalty.
  const Eigen::MatrixXd Ah = minv.asDiagonal() * oracle::to_dense(A) * minv.asDiagonal();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Ah).eigenvalues();
  EXPECT_NEAR(ev[0], 0.0, 1e-9);
  EXPECT_GT(ev[1], 1.0);
  const Eigen::VectorXd es = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::to_dense(S)).eigenvalues();
  EXPECT_GT(es.minCoeff(), -1e-12);
}

INSTANTIATE_TEST_SUITE_P(Meshes, StokesBlocks,
                         ::testing::Values(Shape{3, 2, 0}, Shape{3, 2, 1}, Shape{2, 3, 2}, Shape{1, 1, 1}, Shape{4, 4, 1},
                                           Shape{2, 2, 3}));

TEST(Sip, PiecewiseConstantClosedForm) {
  // k = 0: only the penalty term survives, theta/h * |F| = theta per edge.
  const double theta = 7.0;
  const auto s = xspace(4, 4, 0);
  const Eigen::MatrixXd A = oracle::to_dense(assemble_sip(*s, theta));
  const auto& m = s->mesh();
  for (int c = 0; c < 16; ++c) {
    EXPECT_NEAR(A(c, c), 4 * theta, 1e-12);
    for (int d = 0; d < 2; ++d)
      for (int side : {-1, 1}) EXPECT_NEAR(A(c, m.neighbor(c, d, side)), -theta, 1e-12);
    EXPECT_NEAR(A.row(c).sum(), 0.0, 1e-12);
  }
}

TEST(Sip, RejectsNonPositivePenalty) {
  const auto s = xspace(2, 2, 1);
  EXPECT_THROW(assemble_sip(*s, 0.0), std::invalid_argument);
  EXPECT_THROW(assemble_sip(*s, -1.0), std::invalid_argument);
  EXPECT_THROW(StokesSolver(s, -1.0), std::invalid_argument);
}

TEST(Sip, RejectsNonPeriodicMesh) {
  const DGSpace2D s(build_mesh(kX, {2, 2}, {true, false}), 1);
  EXPECT_THROW(assemble_sip(s, 10.0), std::invalid_argument);
}

TEST(StokesSolve, ZeroDataGivesZeroSolution) {
  const auto s = xspace(3, 3, 1);
  const StokesSolver st(s, 10.0);
  ScalarField rho(s);
  std::fill(rho.values.begin(), rho.values.end(), 1.0);
  const StokesSolution sol = st.solve(rho, nullptr, {});
  for (int j = 0; j < 2; ++j)
    for (double v : sol.u.comp[j].values) EXPECT_NEAR(v, 0.0, 1e-14);
  for (double v : sol.p.values.values) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(StokesSolve, ConstantDensityAndForceGiveUniformFlow) {
  const auto s = xspace(4, 4, 2);
  const StokesSolver st(s, 10.0);
  ScalarField rho(s);
  std::fill(rho.values.begin(), rho.values.end(), 2.5);
  const Vec2 U{0.3, -1.2};
  const StokesSolution sol = st.solve(rho, nullptr, [&](const Vec2&) { return Vec2{2.5 * U[0], 2.5 * U[1]}; });
  for (int j = 0; j < 2; ++j)
    for (double v : sol.u.comp[j].values) EXPECT_NEAR(v, U[j], 1e-11);
  for (double v : sol.p.values.values) EXPECT_NEAR(v, 0.0, 1e-11);
  EXPECT_NEAR(sol.multiplier, 0.0, 1e-11);
}

TEST(StokesSolve, MomentumCompatibilityAndEnergyIdentity) {
  for (int k : {0, 1, 2}) {
    const auto s = xspace(4, 3, k);
    const StokesSolver st(s, 12.0);
    const ScalarField rho = density(s);
    const auto m = momentum(s);
    const StokesSolution sol = st.solve(rho, &m, kForce);
    const auto load = st.load_vector(&m, kForce);
    const int n = s->num_dofs();
    const oracle::Space o(kX, 4, 3, k, true);
    const Eigen::MatrixXd R = oracle::reaction(o, rho.values);
    // Testing with phi = e_j: int rho u_j = int (m + G)_j.
    double scale = 1.0;
    for (int j = 0; j < 2; ++j) {
      const double lhs = Eigen::VectorXd::Ones(n).dot(R * vec(sol.u.comp[j].values));
      const double rhs = vec(load).segment(j * n, n).sum();
      scale = std::max(scale, std::abs(rhs));
      EXPECT_NEAR(lhs, rhs, 1e-11 * scale) << k << " " << j;
    }
    // a(u,u) + (rho u, u) + s(p,p) = (m + G, u).
    double rhs = 0.0, react = 0.0;
    for (int j = 0; j < 2; ++j) {
      const Eigen::VectorXd u = vec(sol.u.comp[j].values);
      rhs += vec(load).segment(j * n, n).dot(u);
      react += u.dot(R * u);
    }
    const double lhs = st.a_form(sol.u, sol.u) + react + st.s_form(sol.p, sol.p);
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, std::abs(rhs))) << k;
    EXPECT_NEAR(sol.p.mean(), 0.0, 1e-12) << k;
    EXPECT_NEAR(sol.multiplier, 0.0, 1e-10) << k;
    // Second equation: b(u, q) = s(p, q) for every q; check with q = p.
    EXPECT_NEAR(st.b_form(sol.u, sol.p), st.s_form(sol.p, sol.p), 1e-11 * std::max(1.0, std::abs(rhs))) << k;
  }
}

TEST(StokesSolve, FormsMatchMatrices) {
  const auto s = xspace(3, 3, 1);
  const StokesSolver st(s, 10.0);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  VelocityField u(s), phi(s);
  PressureField p(s), q(s);
  for (auto* f : {&u.comp[0], &u.comp[1], &phi.comp[0], &phi.comp[1], &p.values, &q.values})
    for (double& v : f->values) v = U(rng);
  const Eigen::MatrixXd A = oracle::to_dense(st.sip());
  double a = 0.0, b = 0.0;
  for (int j = 0; j < 2; ++j) {
    a += vec(u.comp[j].values).dot(A * vec(phi.comp[j].values));
    b += vec(q.values.values).dot(oracle::to_dense(st.coupling(j)) * vec(u.comp[j].values));
  }
  EXPECT_NEAR(st.a_form(u, phi), a, 1e-12 * std::abs(a) + 1e-12);
  EXPECT_NEAR(st.b_form(u, q), b, 1e-12 * std::abs(b) + 1e-12);
  EXPECT_NEAR(st.s_form(p, q), vec(p.values.values).dot(oracle::to_dense(st.stabilization()) * vec(q.values.values)), 1e-12);
}

TEST(StokesSolve, SystemMatrixLayout) {
  const auto s = xspace(2, 2, 1);
  const StokesSolver st(s, 10.0);
  const ScalarField rho = density(s);
  const Eigen::MatrixXd K = oracle::to_dense(st.system_matrix(rho));
  const int n = s->num_dofs();
  ASSERT_EQ(K.rows(), 3 * n + 1);
  const Eigen::MatrixXd AR = oracle::to_dense(st.sip()) + oracle::to_dense(assemble_reaction(rho));
  const Eigen::MatrixXd B0 = oracle::to_dense(st.coupling(0)), B1 = oracle::to_dense(st.coupling(1));
  EXPECT_LE((K.block(0, 0, n, n) - AR).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((K.block(n, n, n, n) - AR).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(K.block(0, n, n, n).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE((K.block(0, 2 * n, n, n) - B0.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((K.block(2 * n, n, n, n) + B1).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((K.block(2 * n, 2 * n, n, n) - oracle::to_dense(st.stabilization())).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(K.col(3 * n).sum(), 1.0, 1e-12);
  EXPECT_NEAR(K.row(3 * n).sum(), 1.0, 1e-12);
  EXPECT_EQ(K(3 * n, 3 * n), 0.0);
}

TEST(StokesSolve, ShearFlowConvergesAtDegreeTwo) {
  // u = (sin 2 pi y, 0), p = 0 with rho = 1.
  auto uex = [](const Vec2& x) { return std::sin(2 * kPi * x[1]); };
  double err[2];
  for (int i = 0; i < 2; ++i) {
    const int n = 4 << i;
    const auto s = xspace(n, n, 2);
    const StokesSolver st(s, 20.0);
    ScalarField rho(s);
    std::fill(rho.values.begin(), rho.values.end(), 1.0);
    const StokesSolution sol = st.solve(rho, nullptr, [&](const Vec2& x) {
      return Vec2{(1.0 + 4 * kPi * kPi) * uex(x), 0.0};
    });
    const auto r = oracle::legendre_rule(6);
    double e2 = 0.0;
    for (int c = 0; c < s->num_cells(); ++c)
      for (int q0 = 0; q0 < 6; ++q0)
        for (int q1 = 0; q1 < 6; ++q1) {
          const Vec2 xi{r.x[q0], r.x[q1]};
          const double d = sol.u.comp[0].evaluate(c, xi) - uex(s->mesh().map_to_physical(c, xi));
          e2 += r.w[q0] * r.w[q1] * s->mesh().cell_area() / 4 * d * d;
        }
    err[i] = std::sqrt(e2);
  }
  EXPECT_GT(std::log2(err[0] / err[1]), 2.5);
}
