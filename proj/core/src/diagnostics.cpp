#include "vsdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vsdg {

namespace {

int error_points(int degree, int points) { return points > 0 ? points : projection_quadrature_points(degree); }

// Tensor-rule tables on one reference cell: value[q * npc + a] and weights.
struct CellRule {
  int nq = 0, npc = 0;
  std::vector<double> xi0, xi1, weight, value;

  CellRule(const DGSpace2D& s, int points) : npc(s.nodes_per_cell()) {
    const QuadratureRule r = gauss_rule(points);
    const LineTable t = tabulate(s.basis(), r);
    const int n = s.nodes_1d(), P = r.size();
    nq = P * P;
    const double jac = 0.25 * s.mesh().cell_area();
    for (int q1 = 0; q1 < P; ++q1)
      for (int q0 = 0; q0 < P; ++q0) {
        xi0.push_back(r.points[q0]);
        xi1.push_back(r.points[q1]);
        weight.push_back(r.weights[q0] * r.weights[q1] * jac);
        for (int a = 0; a < npc; ++a) value.push_back(t.value[q0 * n + a % n] * t.value[q1 * n + a / n]);
      }
  }
  Vec2 point(const DGSpace2D& s, int cell, int q) const { return s.mesh().map_to_physical(cell, {xi0[q], xi1[q]}); }
  double eval(const double* coeff, int q) const {
    double r = 0.0;
    for (int a = 0; a < npc; ++a) r += value[q * npc + a] * coeff[a];
    return r;
  }
};

// Values of f_h at all (qx, qv) points of element (ix, iv): out[qx * nqv + qv].
void element_values(const PhaseField& fh, int ix, int iv, const CellRule& rx, const CellRule& rv,
                    std::vector<double>& tmp, std::vector<double>& out) {
  const int npv = rv.npc;
  const auto blk = fh.block(ix, iv);
  tmp.assign(static_cast<std::size_t>(rx.nq) * npv, 0.0);
  for (int qx = 0; qx < rx.nq; ++qx)
    for (int a = 0; a < rx.npc; ++a) {
      const double L = rx.value[qx * rx.npc + a];
      for (int b = 0; b < npv; ++b) tmp[qx * npv + b] += L * blk[a * npv + b];
    }
  out.resize(static_cast<std::size_t>(rx.nq) * rv.nq);
  for (int qx = 0; qx < rx.nq; ++qx)
    for (int qv = 0; qv < rv.nq; ++qv) out[qx * rv.nq + qv] = rv.eval(&tmp[qx * npv], qv);
}

}  // namespace

ConservedQuantities conserved_quantities(const PhaseField& f) {
  const auto& xs = *f.space->x();
  const auto& vs = *f.space->v();
  const int npx = xs.nodes_per_cell(), npv = vs.nodes_per_cell();
  // Exact v-moments of each basis function: 1, v1, v2, |v|^2/2.
  const CellRule rv(vs, vs.degree() + 2);
  std::vector<double> mom(static_cast<std::size_t>(vs.num_cells()) * npv * 4, 0.0);
  for (int iv = 0; iv < vs.num_cells(); ++iv)
    for (int q = 0; q < rv.nq; ++q) {
      const Vec2 v = rv.point(vs, iv, q);
      for (int b = 0; b < npv; ++b) {
        const double w = rv.weight[q] * rv.value[q * npv + b];
        double* m = &mom[(static_cast<std::size_t>(iv) * npv + b) * 4];
        m[0] += w;
        m[1] += w * v[0];
        m[2] += w * v[1];
        m[3] += w * 0.5 * (v[0] * v[0] + v[1] * v[1]);
      }
    }
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (int ix = 0; ix < xs.num_cells(); ++ix) {
    double cell[4] = {0.0, 0.0, 0.0, 0.0};
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      const auto blk = f.block(ix, iv);
      for (int a = 0; a < npx; ++a) {
        const double wa = xs.node_weight(a);
        for (int b = 0; b < npv; ++b) {
          const double g = wa * blk[a * npv + b];
          const double* m = &mom[(static_cast<std::size_t>(iv) * npv + b) * 4];
          for (int k = 0; k < 4; ++k) cell[k] += m[k] * g;
        }
      }
    }
    for (int k = 0; k < 4; ++k) acc[k] += cell[k];
  }
  return {acc[0], {acc[1], acc[2]}, acc[3]};
}

double l2_error_phase(const PhaseField& fh, const PhaseFunction& exact, int points) {
  const auto& xs = *fh.space->x();
  const auto& vs = *fh.space->v();
  const int P = error_points(std::max(xs.degree(), vs.degree()), points);
  const CellRule rx(xs, P), rv(vs, P);
  std::vector<double> tmp, vals;
  double total = 0.0;
  for (int ix = 0; ix < xs.num_cells(); ++ix)
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      element_values(fh, ix, iv, rx, rv, tmp, vals);
      double s = 0.0;
      for (int qx = 0; qx < rx.nq; ++qx) {
        const Vec2 x = rx.point(xs, ix, qx);
        for (int qv = 0; qv < rv.nq; ++qv) {
          const double e = vals[qx * rv.nq + qv] - exact(x, rv.point(vs, iv, qv));
          s += rx.weight[qx] * rv.weight[qv] * e * e;
        }
      }
      total += s;
    }
  return std::sqrt(total);
}

double l2_error_phase(const PhaseField& fh, const std::vector<SeparableTerm>& exact, int points) {
  const auto& xs = *fh.space->x();
  const auto& vs = *fh.space->v();
  const int P = error_points(std::max(xs.degree(), vs.degree()), points);
  const CellRule rx(xs, P), rv(vs, P);
  const int nt = static_cast<int>(exact.size());
  // xv[(ix * nq + q) * nt + s]
  std::vector<double> xv(static_cast<std::size_t>(xs.num_cells()) * rx.nq * nt);
  std::vector<double> vv(static_cast<std::size_t>(vs.num_cells()) * rv.nq * nt);
  for (int ix = 0; ix < xs.num_cells(); ++ix)
    for (int q = 0; q < rx.nq; ++q)
      for (int s = 0; s < nt; ++s) xv[(static_cast<std::size_t>(ix) * rx.nq + q) * nt + s] = exact[s].x_part(rx.point(xs, ix, q));
  for (int iv = 0; iv < vs.num_cells(); ++iv)
    for (int q = 0; q < rv.nq; ++q)
      for (int s = 0; s < nt; ++s) vv[(static_cast<std::size_t>(iv) * rv.nq + q) * nt + s] = exact[s].v_part(rv.point(vs, iv, q));
  std::vector<double> tmp, vals;
  double total = 0.0;
  for (int ix = 0; ix < xs.num_cells(); ++ix)
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      element_values(fh, ix, iv, rx, rv, tmp, vals);
      double sum = 0.0;
      for (int qx = 0; qx < rx.nq; ++qx) {
        const double* X = &xv[(static_cast<std::size_t>(ix) * rx.nq + qx) * nt];
        double sx = 0.0;
        for (int qv = 0; qv < rv.nq; ++qv) {
          const double* V = &vv[(static_cast<std::size_t>(iv) * rv.nq + qv) * nt];
          double ex = 0.0;
          for (int s = 0; s < nt; ++s) ex += X[s] * V[s];
          const double e = vals[qx * rv.nq + qv] - ex;
          sx += rv.weight[qv] * e * e;
        }
        sum += rx.weight[qx] * sx;
      }
      total += sum;
    }
  return std::sqrt(total);
}

double l2_error_velocity(const VelocityField& uh, const std::function<Vec2(const Vec2&)>& exact, int points) {
  const DGSpace2D& s = *uh.comp[0].space;
  const CellRule r(s, error_points(s.degree(), points));
  double total = 0.0;
  for (int c = 0; c < s.num_cells(); ++c)
    for (int q = 0; q < r.nq; ++q) {
      const Vec2 ue = exact(r.point(s, c, q));
      const double e0 = r.eval(uh.comp[0].values.data() + s.dof(c, 0), q) - ue[0];
      const double e1 = r.eval(uh.comp[1].values.data() + s.dof(c, 0), q) - ue[1];
      total += r.weight[q] * (e0 * e0 + e1 * e1);
    }
  return std::sqrt(total);
}

double l2_error_pressure(const PressureField& ph, const SpaceFunction& exact, int points) {
  const DGSpace2D& s = *ph.values.space;
  const CellRule r(s, error_points(s.degree(), points));
  const auto& dom = s.mesh().domain();
  const double area = (dom.upper[0] - dom.lower[0]) * (dom.upper[1] - dom.lower[1]);
  std::vector<double> ph_q, pe_q, w;
  double mh = 0.0, me = 0.0;
  for (int c = 0; c < s.num_cells(); ++c)
    for (int q = 0; q < r.nq; ++q) {
      ph_q.push_back(r.eval(ph.values.values.data() + s.dof(c, 0), q));
      pe_q.push_back(exact(r.point(s, c, q)));
      w.push_back(r.weight[q]);
      mh += w.back() * ph_q.back();
      me += w.back() * pe_q.back();
    }
  mh /= area;
  me /= area;
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double e = (ph_q[i] - mh) - (pe_q[i] - me);
    total += w[i] * e * e;
  }
  return std::sqrt(total);
}

double energy_error_velocity(const VelocityField& uh,
                             const std::function<std::array<double, 4>(const Vec2&)>& grad_exact, int points) {
  const DGSpace2D& s = *uh.comp[0].space;
  const int P = error_points(s.degree(), points);
  const QuadratureRule rule = gauss_rule(P);
  const LineTable t = tabulate(s.basis(), rule);
  const int n = s.nodes_1d(), npc = s.nodes_per_cell();
  const Vec2 h = s.mesh().cell_width();
  const double jac = 0.25 * h[0] * h[1];
  double vol = 0.0;
  for (int c = 0; c < s.num_cells(); ++c)
    for (int q1 = 0; q1 < P; ++q1)
      for (int q0 = 0; q0 < P; ++q0) {
        const Vec2 x = s.mesh().map_to_physical(c, {rule.points[q0], rule.points[q1]});
        const auto ge = grad_exact(x);
        double gh[4] = {0.0, 0.0, 0.0, 0.0};
        for (int a = 0; a < npc; ++a) {
          const int a0 = a % n, a1 = a / n;
          const double dx = 2.0 / h[0] * t.deriv[q0 * n + a0] * t.value[q1 * n + a1];
          const double dy = 2.0 / h[1] * t.value[q0 * n + a0] * t.deriv[q1 * n + a1];
          for (int k = 0; k < 2; ++k) {
            const double uk = uh.comp[k].values[s.dof(c, a)];
            gh[2 * k] += dx * uk;
            gh[2 * k + 1] += dy * uk;
          }
        }
        double e = 0.0;
        for (int k = 0; k < 4; ++k) e += (gh[k] - ge[k]) * (gh[k] - ge[k]);
        vol += rule.weights[q0] * rule.weights[q1] * jac * e;
      }
  double jump = 0.0;
  for (const Edge& e : s.mesh().edges()) {
    const int d = e.axis, ta = 1 - d;
    for (int q = 0; q < P; ++q) {
      for (int k = 0; k < 2; ++k) {
        double um = 0.0, up = 0.0;
        for (int a = 0; a < npc; ++a) {
          const int ad = d == 0 ? a % n : a / n, at = d == 0 ? a / n : a % n;
          const double lt = t.value[q * n + at];
          um += t.trace_hi[ad] * lt * uh.comp[k].values[s.dof(e.minus_cell, a)];
          if (!e.is_boundary) up += t.trace_lo[ad] * lt * uh.comp[k].values[s.dof(e.plus_cell, a)];
        }
        jump += rule.weights[q] * 0.5 * h[ta] / h[d] * (um - up) * (um - up);
      }
    }
  }
  return std::sqrt(vol + jump);
}

double min_nodal_value(const ScalarField& s) {
  if (s.values.empty()) return 0.0;
  return *std::min_element(s.values.begin(), s.values.end());
}

double drag_dissipation(const VelocityField& u, const PhaseField& f) {
  const auto& xs = *f.space->x();
  const auto& vs = *f.space->v();
  const CellRule rx(xs, default_quadrature_points(xs.degree()));
  const int npx = xs.nodes_per_cell(), npv = vs.nodes_per_cell();
  std::vector<Vec2> vnode(static_cast<std::size_t>(vs.num_cells()) * npv);
  for (int iv = 0; iv < vs.num_cells(); ++iv)
    for (int b = 0; b < npv; ++b) vnode[iv * npv + b] = vs.node(iv, b);
  double total = 0.0;
  std::vector<double> g(npv);
  for (int ix = 0; ix < xs.num_cells(); ++ix)
    for (int q = 0; q < rx.nq; ++q) {
      const Vec2 uq{rx.eval(u.comp[0].values.data() + xs.dof(ix, 0), q), rx.eval(u.comp[1].values.data() + xs.dof(ix, 0), q)};
      double sq = 0.0;
      for (int iv = 0; iv < vs.num_cells(); ++iv) {
        const auto blk = f.block(ix, iv);
        std::fill(g.begin(), g.end(), 0.0);
        for (int a = 0; a < npx; ++a) {
          const double L = rx.value[q * npx + a];
          for (int b = 0; b < npv; ++b) g[b] += L * blk[a * npv + b];
        }
        for (int b = 0; b < npv; ++b) {
          const Vec2& v = vnode[iv * npv + b];
          const double d0 = uq[0] - v[0], d1 = uq[1] - v[1];
          sq += vs.node_weight(b) * (d0 * d0 + d1 * d1) * g[b];
        }
      }
      total += rx.weight[q] * sq;
    }
  return total;
}

double energy_balance_residual(const PhaseField& f, const VelocityField& u, const PressureField& p,
                               const StokesSolver& stokes, const VectorFunction& g) {
  const int kx = f.space->x()->degree(), kv = f.space->v()->degree();
  if (kx < 2 || kv < 2) {
    std::ostringstream msg;
    msg << "energy balance holds only for k >= 2 (got k_x = " << kx << ", k_v = " << kv << ")";
    throw std::invalid_argument(msg.str());
  }
  const TransportOperator op(f.space);
  PhaseField rx(f.space), rv(f.space);
  op.apply_x(f, rx);
  op.apply_v(u, f, rv);
  axpy(1.0, rv, rx);
  const double d_energy = conserved_quantities(rx).energy;
  const double outflow =
      op.v_boundary_outflow(u, f, [](const Vec2& v) { return 0.5 * (v[0] * v[0] + v[1] * v[1]); });
  double work = 0.0;
  if (g) {
    const auto load = stokes.load_vector(nullptr, g);
    const std::size_t n = u.comp[0].values.size();
    for (std::size_t i = 0; i < n; ++i) work += load[i] * u.comp[0].values[i] + load[n + i] * u.comp[1].values[i];
  }
  const double balance =
      d_energy + outflow + stokes.a_form(u, u) + stokes.s_form(p, p) + drag_dissipation(u, f) - work;
  const double e = conserved_quantities(f).energy;
  return e != 0.0 ? std::abs(balance) / std::abs(e) : std::abs(balance);
}

ConvergenceTable eoc(const std::vector<ErrorRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("eoc: need at least two meshes");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i - 1].h / rows[i].h;
    if (!(std::abs(ratio - 2.0) <= 1e-9)) {
      std::ostringstream msg;
      msg << "eoc: mesh sizes must halve from row to row (h = " << rows[i - 1].h << " then " << rows[i].h << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto rate = [](double coarse, double fine) { return std::log2(coarse / fine); };
  ConvergenceTable t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ErrorRow& r = rows[i];
    ConvergenceRow c{r.h, r.err_f, r.err_u, r.err_p, nan, nan, nan};
    if (i > 0) {
      c.eoc_f = rate(rows[i - 1].err_f, r.err_f);
      c.eoc_u = rate(rows[i - 1].err_u, r.err_u);
      c.eoc_p = rate(rows[i - 1].err_p, r.err_p);
    }
    t.rows.push_back(c);
  }
  return t;
}

}  // namespace vsdg
