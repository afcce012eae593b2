#include "vsdg/stokes.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace vsdg {

namespace {

using Dense = Eigen::MatrixXd;

// Tabulated 2D basis on the reference cell at the tensor Gauss points of the
// default rule, plus edge traces along each axis.
struct CellTables {
  int n = 0, npc = 0, nq1 = 0, nq = 0;
  QuadratureRule rule;
  LineTable line;
  std::vector<double> dlo, dhi;  // l'_a(-1), l'_a(+1)

  explicit CellTables(const DGSpace2D& s)
      : n(s.nodes_1d()), npc(s.nodes_per_cell()), nq1(default_quadrature_points(s.degree())) {
    nq = nq1 * nq1;
    rule = gauss_rule(nq1);
    line = tabulate(s.basis(), rule);
    dlo = s.basis().eval_deriv(-1.0);
    dhi = s.basis().eval_deriv(1.0);
  }
  double value(int q, int a) const {
    return line.value[(q % nq1) * n + a % n] * line.value[(q / nq1) * n + a / n];
  }
  double weight(int q) const { return rule.weights[q % nq1] * rule.weights[q / nq1]; }
};

// Edge traces for the two cells sharing an edge normal to `axis`, combined
// index I in [0, 2 npc): I < npc is the minus cell. Returns for every
// tangential point: jump values and averaged normal derivatives.
struct EdgeTraces {
  std::vector<double> jump, avg, dnavg;  // [q * 2npc + I]
  std::vector<double> ds;                // line weight incl. Jacobian
};

EdgeTraces edge_traces(const DGSpace2D& s, const CellTables& T, int axis) {
  const Vec2 h = s.mesh().cell_width();
  const int t_axis = 1 - axis;
  const int n = T.n, npc = T.npc, m = 2 * npc;
  EdgeTraces e;
  e.jump.assign(T.nq1 * m, 0.0);
  e.avg.assign(T.nq1 * m, 0.0);
  e.dnavg.assign(T.nq1 * m, 0.0);
  e.ds.resize(T.nq1);
  const double sd = 2.0 / h[axis];
  for (int q = 0; q < T.nq1; ++q) {
    e.ds[q] = T.rule.weights[q] * 0.5 * h[t_axis];
    for (int a = 0; a < npc; ++a) {
      const int ad = axis == 0 ? a % n : a / n;
      const int at = axis == 0 ? a / n : a % n;
      const double lt = T.line.value[q * n + at];
      const double vm = T.line.trace_hi[ad] * lt, vp = T.line.trace_lo[ad] * lt;
      const double dm = sd * T.dhi[ad] * lt, dp = sd * T.dlo[ad] * lt;
      e.jump[q * m + a] = vm;
      e.jump[q * m + npc + a] = -vp;
      e.avg[q * m + a] = 0.5 * vm;
      e.avg[q * m + npc + a] = 0.5 * vp;
      e.dnavg[q * m + a] = 0.5 * dm;
      e.dnavg[q * m + npc + a] = 0.5 * dp;
    }
  }
  return e;
}

void scatter_cell(const DGSpace2D& s, const Dense& local, int row_off, int col_off, double scale,
                  std::vector<Triplet>& out) {
  const int npc = s.nodes_per_cell();
  for (int c = 0; c < s.num_cells(); ++c)
    for (int i = 0; i < npc; ++i)
      for (int j = 0; j < npc; ++j)
        if (local(i, j) != 0.0)
          out.emplace_back(row_off + s.dof(c, i), col_off + s.dof(c, j), scale * local(i, j));
}

void scatter_edges(const DGSpace2D& s, int axis, const Dense& local, int row_off, int col_off, double scale,
                   std::vector<Triplet>& out) {
  const int npc = s.nodes_per_cell();
  for (const Edge& e : s.mesh().edges()) {
    if (e.axis != axis) continue;
    if (e.is_boundary) throw std::invalid_argument("Stokes assembly requires a periodic x-mesh");
    auto dof = [&](int I) { return I < npc ? s.dof(e.minus_cell, I) : s.dof(e.plus_cell, I - npc); };
    for (int I = 0; I < 2 * npc; ++I)
      for (int J = 0; J < 2 * npc; ++J)
        if (local(I, J) != 0.0) out.emplace_back(row_off + dof(I), col_off + dof(J), scale * local(I, J));
  }
}

Dense sip_cell(const DGSpace2D& s, const CellTables& T) {
  const Vec2 h = s.mesh().cell_width();
  const double jac = 0.25 * h[0] * h[1];
  const int n = T.n;
  Dense K = Dense::Zero(T.npc, T.npc);
  std::vector<double> g0(T.npc), g1(T.npc);
  for (int q = 0; q < T.nq; ++q) {
    const int q0 = q % T.nq1, q1 = q / T.nq1;
    for (int a = 0; a < T.npc; ++a) {
      const int a0 = a % n, a1 = a / n;
      g0[a] = 2.0 / h[0] * T.line.deriv[q0 * n + a0] * T.line.value[q1 * n + a1];
      g1[a] = 2.0 / h[1] * T.line.value[q0 * n + a0] * T.line.deriv[q1 * n + a1];
    }
    const double w = T.weight(q) * jac;
    for (int i = 0; i < T.npc; ++i)
      for (int j = 0; j < T.npc; ++j) K(i, j) += w * (g0[i] * g0[j] + g1[i] * g1[j]);
  }
  return K;
}

Dense sip_edge(const DGSpace2D& s, const CellTables& T, int axis, double penalty) {
  const EdgeTraces e = edge_traces(s, T, axis);
  const int m = 2 * T.npc;
  const double sigma = penalty / s.mesh().cell_width()[axis];
  Dense E = Dense::Zero(m, m);
  for (int q = 0; q < T.nq1; ++q) {
    const double* J = &e.jump[q * m];
    const double* D = &e.dnavg[q * m];
    for (int I = 0; I < m; ++I)
      for (int K = 0; K < m; ++K)
        E(I, K) += e.ds[q] * (sigma * J[I] * J[K] - D[K] * J[I] - J[K] * D[I]);
  }
  return E;
}

}  // namespace

SparseOperator assemble_sip(const DGSpace2D& space, double penalty) {
  if (!(penalty > 0.0)) {
    std::ostringstream msg;
    msg << "SIP penalty must be positive, got " << penalty;
    throw std::invalid_argument(msg.str());
  }
  const CellTables T(space);
  std::vector<Triplet> t;
  scatter_cell(space, sip_cell(space, T), 0, 0, 1.0, t);
  for (int axis = 0; axis < 2; ++axis) scatter_edges(space, axis, sip_edge(space, T, axis, penalty), 0, 0, 1.0, t);
  return SparseOperator(space.num_dofs(), space.num_dofs(), t);
}

SparseOperator assemble_coupling(const DGSpace2D& space, int component) {
  if (component != 0 && component != 1) throw std::invalid_argument("coupling component must be 0 or 1");
  const CellTables T(space);
  const Vec2 h = space.mesh().cell_width();
  const double jac = 0.25 * h[0] * h[1];
  const int n = T.n, npc = T.npc;
  // volume: -int q d_j u
  Dense V = Dense::Zero(npc, npc);
  for (int q = 0; q < T.nq; ++q) {
    const int q0 = q % T.nq1, q1 = q / T.nq1;
    const double w = T.weight(q) * jac;
    for (int k = 0; k < npc; ++k) {
      const int k0 = k % n, k1 = k / n;
      const double dk = component == 0
                            ? 2.0 / h[0] * T.line.deriv[q0 * n + k0] * T.line.value[q1 * n + k1]
                            : 2.0 / h[1] * T.line.value[q0 * n + k0] * T.line.deriv[q1 * n + k1];
      for (int i = 0; i < npc; ++i) V(i, k) -= w * T.value(q, i) * dk;
    }
  }
  // edges normal to e_j: int [[u]] {q}
  const EdgeTraces e = edge_traces(space, T, component);
  const int m = 2 * npc;
  Dense E = Dense::Zero(m, m);
  for (int q = 0; q < T.nq1; ++q)
    for (int I = 0; I < m; ++I)
      for (int K = 0; K < m; ++K) E(I, K) += e.ds[q] * e.avg[q * m + I] * e.jump[q * m + K];
  std::vector<Triplet> t;
  scatter_cell(space, V, 0, 0, 1.0, t);
  scatter_edges(space, component, E, 0, 0, 1.0, t);
  return SparseOperator(space.num_dofs(), space.num_dofs(), t);
}

SparseOperator assemble_pressure_stab(const DGSpace2D& space) {
  const CellTables T(space);
  const int m = 2 * T.npc;
  std::vector<Triplet> t;
  for (int axis = 0; axis < 2; ++axis) {
    const EdgeTraces e = edge_traces(space, T, axis);
    const double hx = space.mesh().cell_width()[axis];
    Dense E = Dense::Zero(m, m);
    for (int q = 0; q < T.nq1; ++q)
      for (int I = 0; I < m; ++I)
        for (int K = 0; K < m; ++K) E(I, K) += hx * e.ds[q] * e.jump[q * m + I] * e.jump[q * m + K];
    scatter_edges(space, axis, E, 0, 0, 1.0, t);
  }
  return SparseOperator(space.num_dofs(), space.num_dofs(), t);
}

namespace {

void reaction_triplets(const ScalarField& rho, int off, std::vector<Triplet>& t) {
  const DGSpace2D& s = *rho.space;
  const CellTables T(s);
  const double jac = 0.25 * s.mesh().cell_area();
  const int npc = T.npc;
  Dense phi(T.nq, npc);
  for (int q = 0; q < T.nq; ++q)
    for (int a = 0; a < npc; ++a) phi(q, a) = T.value(q, a);
  Eigen::VectorXd w(T.nq);
  for (int q = 0; q < T.nq; ++q) w[q] = T.weight(q) * jac;
  for (int c = 0; c < s.num_cells(); ++c) {
    Eigen::Map<const Eigen::VectorXd> r(rho.values.data() + s.dof(c, 0), npc);
    const Eigen::VectorXd rq = (phi * r).cwiseProduct(w);
    const Dense M = phi.transpose() * rq.asDiagonal() * phi;
    for (int i = 0; i < npc; ++i)
      for (int j = 0; j < npc; ++j) t.emplace_back(off + s.dof(c, i), off + s.dof(c, j), M(i, j));
  }
}

}  // namespace

SparseOperator assemble_reaction(const ScalarField& rho) {
  std::vector<Triplet> t;
  reaction_triplets(rho, 0, t);
  const int n = rho.space->num_dofs();
  return SparseOperator(n, n, t);
}

StokesSolver::StokesSolver(std::shared_ptr<const DGSpace2D> space, double penalty)
    : space_(std::move(space)), penalty_(penalty) {
  sip_ = assemble_sip(*space_, penalty_);
  coupling_ = {assemble_coupling(*space_, 0), assemble_coupling(*space_, 1)};
  stab_ = assemble_pressure_stab(*space_);

  const int n = space_->num_dofs();
  for (const auto& e : sip_.triplets()) {
    fixed_.emplace_back(e.row(), e.col(), e.value());
    fixed_.emplace_back(n + e.row(), n + e.col(), e.value());
  }
  for (int j = 0; j < 2; ++j)
    for (const auto& e : coupling_[j].triplets()) {
      fixed_.emplace_back(j * n + e.col(), 2 * n + e.row(), e.value());
      fixed_.emplace_back(2 * n + e.row(), j * n + e.col(), -e.value());
    }
  for (const auto& e : stab_.triplets()) fixed_.emplace_back(2 * n + e.row(), 2 * n + e.col(), e.value());
  for (int c = 0; c < space_->num_cells(); ++c)
    for (int a = 0; a < space_->nodes_per_cell(); ++a) {
      const int i = space_->dof(c, a);
      fixed_.emplace_back(2 * n + i, 3 * n, space_->node_weight(a));
      fixed_.emplace_back(3 * n, 2 * n + i, space_->node_weight(a));
    }
}

SparseOperator StokesSolver::system_matrix(const ScalarField& rho) const {
  const int n = space_->num_dofs();
  std::vector<Triplet> t = fixed_;
  reaction_triplets(rho, 0, t);
  reaction_triplets(rho, n, t);
  return SparseOperator(3 * n + 1, 3 * n + 1, t);
}

std::vector<double> StokesSolver::load_vector(const std::array<ScalarField, 2>* momentum,
                                              const VectorFunction& g) const {
  const DGSpace2D& s = *space_;
  const CellTables T(s);
  const int n = s.num_dofs(), npc = T.npc;
  const double jac = 0.25 * s.mesh().cell_area();
  std::vector<double> b(3 * n + 1, 0.0);
  for (int c = 0; c < s.num_cells(); ++c) {
    for (int q = 0; q < T.nq; ++q) {
      Vec2 val{0.0, 0.0};
      if (momentum)
        for (int a = 0; a < npc; ++a) {
          const double L = T.value(q, a);
          val[0] += L * (*momentum)[0].values[s.dof(c, a)];
          val[1] += L * (*momentum)[1].values[s.dof(c, a)];
        }
      if (g) {
        const Vec2 x = s.mesh().map_to_physical(c, {T.rule.points[q % T.nq1], T.rule.points[q / T.nq1]});
        const Vec2 gv = g(x);
        val[0] += gv[0];
        val[1] += gv[1];
      }
      const double w = T.weight(q) * jac;
      for (int a = 0; a < npc; ++a) {
        const double L = w * T.value(q, a);
        b[s.dof(c, a)] += L * val[0];
        b[n + s.dof(c, a)] += L * val[1];
      }
    }
  }
  return b;
}

StokesSolution StokesSolver::solve(const ScalarField& rho, const std::array<ScalarField, 2>* momentum,
                                   const VectorFunction& g) const {
  const int n = space_->num_dofs();
  const SparseOperator K = system_matrix(rho);
  const std::vector<double> b = load_vector(momentum, g);
  std::vector<double> x;
  try {
    x = DirectSolver(K).solve(b);
  } catch (const SolverError& err) {
    throw SolverError(std::string("indefinite reaction made system singular: ") + err.what());
  }
  StokesSolution sol{VelocityField(space_), PressureField(space_), x[3 * n]};
  std::copy(x.begin(), x.begin() + n, sol.u.comp[0].values.begin());
  std::copy(x.begin() + n, x.begin() + 2 * n, sol.u.comp[1].values.begin());
  std::copy(x.begin() + 2 * n, x.begin() + 3 * n, sol.p.values.values.begin());
  return sol;
}

double StokesSolver::a_form(const VelocityField& u, const VelocityField& phi) const {
  return sip_.bilinear(phi.comp[0].values, u.comp[0].values) + sip_.bilinear(phi.comp[1].values, u.comp[1].values);
}

double StokesSolver::b_form(const VelocityField& u, const PressureField& q) const {
  return coupling_[0].bilinear(q.values.values, u.comp[0].values) +
         coupling_[1].bilinear(q.values.values, u.comp[1].values);
}

double StokesSolver::s_form(const PressureField& p, const PressureField& q) const {
  return stab_.bilinear(q.values.values, p.values.values);
}

}  // namespace vsdg
