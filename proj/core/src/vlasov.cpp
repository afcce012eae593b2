#include "vsdg/vlasov.hpp"

#include <algorithm>

namespace vsdg {

namespace {

int default_points(const PhaseSpace& s, int points) {
  if (points > 0) return points;
  return projection_quadrature_points(std::max(s.x()->degree(), s.v()->degree()));
}

// Values of f at the tensor Gauss points of one cell: out[q0 + P q1].
void sample_cell(const DGSpace2D& space, int cell, const QuadratureRule& rule, std::vector<Vec2>& out) {
  const int P = rule.size();
  out.resize(P * P);
  for (int q1 = 0; q1 < P; ++q1)
    for (int q0 = 0; q0 < P; ++q0)
      out[q0 + P * q1] = space.mesh().map_to_physical(cell, {rule.points[q0], rule.points[q1]});
}

// w[q*np + a] = W_q L_a(xi_q) / w_a for the 2D tensor rule.
std::vector<double> projection_table(const DGSpace2D& space, const QuadratureRule& rule) {
  const LineTable t = tabulate(space.basis(), rule);
  const int n = space.nodes_1d(), P = rule.size();
  const auto& w = space.basis().node_weights();
  std::vector<double> out(static_cast<std::size_t>(P) * P * n * n);
  for (int q1 = 0; q1 < P; ++q1)
    for (int q0 = 0; q0 < P; ++q0)
      for (int a1 = 0; a1 < n; ++a1)
        for (int a0 = 0; a0 < n; ++a0) {
          const int q = q0 + P * q1, a = a0 + n * a1;
          out[static_cast<std::size_t>(q) * n * n + a] = rule.weights[q0] * rule.weights[q1] *
                                                         t.value[q0 * n + a0] * t.value[q1 * n + a1] /
                                                         (w[a0] * w[a1]);
        }
  return out;
}

}  // namespace

PhaseField project_initial(const std::shared_ptr<const PhaseSpace>& space, const PhaseFunction& f0,
                           int points) {
  PhaseField out(space);
  const auto& xs = *space->x();
  const auto& vs = *space->v();
  const QuadratureRule rule = gauss_rule(default_points(*space, points));
  const int P2 = rule.size() * rule.size();
  const int npx = xs.nodes_per_cell(), npv = vs.nodes_per_cell();
  const auto px = projection_table(xs, rule);
  const auto pv = projection_table(vs, rule);
  std::vector<Vec2> xq, vq;
  std::vector<double> fval(static_cast<std::size_t>(P2) * P2), tmp(static_cast<std::size_t>(P2) * npv);
  for (int ix = 0; ix < xs.num_cells(); ++ix) {
    sample_cell(xs, ix, rule, xq);
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      sample_cell(vs, iv, rule, vq);
      for (int qx = 0; qx < P2; ++qx)
        for (int qv = 0; qv < P2; ++qv) fval[qx * P2 + qv] = f0(xq[qx], vq[qv]);
      std::fill(tmp.begin(), tmp.end(), 0.0);
      for (int qx = 0; qx < P2; ++qx)
        for (int qv = 0; qv < P2; ++qv) {
          const double g = fval[qx * P2 + qv];
          for (int b = 0; b < npv; ++b) tmp[qx * npv + b] += pv[qv * npv + b] * g;
        }
      auto blk = out.block(ix, iv);
      for (int qx = 0; qx < P2; ++qx)
        for (int a = 0; a < npx; ++a) {
          const double c = px[qx * npx + a];
          for (int b = 0; b < npv; ++b) blk[a * npv + b] += c * tmp[qx * npv + b];
        }
    }
  }
  return out;
}

PhaseField project_separable(const std::shared_ptr<const PhaseSpace>& space,
                             const std::vector<SeparableTerm>& terms, int points) {
  PhaseField out(space);
  const int pts = default_points(*space, points);
  const auto& xs = space->x();
  const auto& vs = space->v();
  const int npx = xs->nodes_per_cell(), npv = vs->nodes_per_cell();
  for (const auto& term : terms) {
    const ScalarField X = project_scalar(xs, term.x_part, pts);
    const ScalarField Y = project_scalar(vs, term.v_part, pts);
    for (int ix = 0; ix < xs->num_cells(); ++ix)
      for (int iv = 0; iv < vs->num_cells(); ++iv) {
        auto blk = out.block(ix, iv);
        const double* xa = X.values.data() + xs->dof(ix, 0);
        const double* yb = Y.values.data() + vs->dof(iv, 0);
        for (int a = 0; a < npx; ++a)
          for (int b = 0; b < npv; ++b) blk[a * npv + b] += xa[a] * yb[b];
      }
  }
  return out;
}

MomentPair compute_moments(const PhaseField& f) {
  const auto& S = *f.space;
  const auto& xs = S.x();
  const auto& vs = *S.v();
  MomentPair m{ScalarField(xs), {ScalarField(xs), ScalarField(xs)}};
  const int npx = xs->nodes_per_cell(), npv = vs.nodes_per_cell();
  const auto& wv = vs.node_weights();
  std::vector<double> v0(npv), v1(npv);
  for (int ix = 0; ix < xs->num_cells(); ++ix) {
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      for (int b = 0; b < npv; ++b) {
        const Vec2 v = vs.node(iv, b);
        v0[b] = wv[b] * v[0];
        v1[b] = wv[b] * v[1];
      }
      const auto blk = f.block(ix, iv);
      for (int a = 0; a < npx; ++a) {
        double r = 0.0, m0 = 0.0, m1 = 0.0;
        for (int b = 0; b < npv; ++b) {
          const double g = blk[a * npv + b];
          r += wv[b] * g;
          m0 += v0[b] * g;
          m1 += v1[b] * g;
        }
        const int dof = xs->dof(ix, a);
        m.rho.values[dof] += r;
        m.rho_v[0].values[dof] += m0;
        m.rho_v[1].values[dof] += m1;
      }
    }
  }
  return m;
}

TransportOperator::TransportOperator(std::shared_ptr<const PhaseSpace> space) : space_(std::move(space)) {
  const auto& xs = *space_->x();
  const auto& vs = *space_->v();
  auto collocated = [](const NodalBasis1D& basis, std::vector<double>& d, std::vector<double>& lo,
                       std::vector<double>& hi) {
    const int n = basis.size();
    const auto& w = basis.node_weights();
    d.assign(n * n, 0.0);
    for (int q = 0; q < n; ++q) {
      const auto dl = basis.eval_deriv(basis.nodes()[q]);
      for (int a = 0; a < n; ++a) d[a * n + q] = w[q] * dl[a] / w[a];
    }
    lo = basis.eval(-1.0);
    hi = basis.eval(1.0);
  };
  collocated(xs.basis(), dx_, xlo_, xhi_);
  collocated(vs.basis(), dv_, vlo_, vhi_);

  qx_ = default_quadrature_points(xs.degree());
  const QuadratureRule rule = gauss_rule(qx_);
  const LineTable t = tabulate(xs.basis(), rule);
  const int n = xs.nodes_1d(), npx = xs.nodes_per_cell(), nq = qx_ * qx_;
  const auto& w = xs.basis().node_weights();
  interp_.resize(static_cast<std::size_t>(nq) * npx);
  project_.resize(static_cast<std::size_t>(nq) * npx);
  qweight_.resize(nq);
  const double jac = 0.25 * xs.mesh().cell_area();
  for (int q1 = 0; q1 < qx_; ++q1)
    for (int q0 = 0; q0 < qx_; ++q0) {
      const int q = q0 + qx_ * q1;
      const double W = rule.weights[q0] * rule.weights[q1];
      qweight_[q] = W * jac;
      for (int a1 = 0; a1 < n; ++a1)
        for (int a0 = 0; a0 < n; ++a0) {
          const int a = a0 + n * a1;
          const double L = t.value[q0 * n + a0] * t.value[q1 * n + a1];
          interp_[q * npx + a] = L;
          project_[a * nq + q] = W * L / (w[a0] * w[a1]);
        }
    }

  const int npv = vs.nodes_per_cell();
  vnode_.resize(static_cast<std::size_t>(vs.num_cells()) * npv * 2);
  for (int iv = 0; iv < vs.num_cells(); ++iv)
    for (int b = 0; b < npv; ++b) {
      const Vec2 v = vs.node(iv, b);
      vnode_[(iv * npv + b) * 2] = v[0];
      vnode_[(iv * npv + b) * 2 + 1] = v[1];
    }
}

void TransportOperator::apply_x(const PhaseField& f, PhaseField& rate, const XInflow& inflow) const {
  const auto& xs = *space_->x();
  const auto& vs = *space_->v();
  const auto& xm = xs.mesh();
  const int n = xs.nodes_1d(), npv = vs.nodes_per_cell(), nvc = vs.num_cells();
  const auto& w = xs.basis().node_weights();
  const Vec2 h = xm.cell_width();
  const double s[2] = {2.0 / h[0], 2.0 / h[1]};
  rate.space = space_;
  rate.coeffs.assign(space_->num_dofs(), 0.0);

  std::vector<double> vel0(npv), vel1(npv);
  for (int iv = 0; iv < nvc; ++iv) {
    for (int b = 0; b < npv; ++b) {
      vel0[b] = vnode_[(iv * npv + b) * 2];
      vel1[b] = vnode_[(iv * npv + b) * 2 + 1];
    }
    for (int ix = 0; ix < xs.num_cells(); ++ix) {
      const double* F = f.coeffs.data() + space_->block_offset(ix, iv);
      double* R = rate.coeffs.data() + space_->block_offset(ix, iv);
      for (int a1 = 0; a1 < n; ++a1)
        for (int a0 = 0; a0 < n; ++a0) {
          double* r = R + (a0 + n * a1) * npv;
          for (int q = 0; q < n; ++q) {
            const double c0 = s[0] * dx_[a0 * n + q];
            const double c1 = s[1] * dx_[a1 * n + q];
            const double* g0 = F + (q + n * a1) * npv;
            const double* g1 = F + (a0 + n * q) * npv;
            for (int b = 0; b < npv; ++b) r[b] += c0 * vel0[b] * g0[b] + c1 * vel1[b] * g1[b];
          }
        }
    }
  }

  std::vector<double> tm(npv), tp(npv), flux(npv), flux_p(npv);
  const auto& dom = xm.domain();
  for (const Edge& e : xm.edges()) {
    const int d = e.axis;
    const int t_axis = 1 - d;
    auto idx = [&](int ad, int t) { return d == 0 ? ad + n * t : t + n * ad; };
    const bool wrap = static_cast<bool>(inflow) && e.position == dom.lower[d];
    for (int iv = 0; iv < nvc; ++iv) {
      const double* vel = &vnode_[iv * npv * 2];
      const double* Fm = f.coeffs.data() + space_->block_offset(e.minus_cell, iv);
      const double* Fp = f.coeffs.data() + space_->block_offset(e.plus_cell, iv);
      double* Rm = rate.coeffs.data() + space_->block_offset(e.minus_cell, iv);
      double* Rp = rate.coeffs.data() + space_->block_offset(e.plus_cell, iv);
      for (int t = 0; t < n; ++t) {
        std::fill(tm.begin(), tm.end(), 0.0);
        std::fill(tp.begin(), tp.end(), 0.0);
        for (int ad = 0; ad < n; ++ad) {
          const double* gm = Fm + idx(ad, t) * npv;
          const double* gp = Fp + idx(ad, t) * npv;
          for (int b = 0; b < npv; ++b) {
            tm[b] += xhi_[ad] * gm[b];
            tp[b] += xlo_[ad] * gp[b];
          }
        }
        if (!wrap) {
          for (int b = 0; b < npv; ++b) flux[b] = upwind_flux(tm[b], tp[b], vel[2 * b + d]);
          std::copy(flux.begin(), flux.end(), flux_p.begin());
          for (auto& x : flux_p) x = -x;
        } else {
          Vec2 xm_pt{}, xp_pt{};
          xm_pt[d] = dom.upper[d];
          xp_pt[d] = dom.lower[d];
          xm_pt[t_axis] = xp_pt[t_axis] = xs.node(e.minus_cell, idx(0, t))[t_axis];
          for (int b = 0; b < npv; ++b) {
            const Vec2 v{vel[2 * b], vel[2 * b + 1]};
            flux[b] = upwind_flux(tm[b], inflow(xm_pt, v), v[d]);
            flux_p[b] = upwind_flux(tp[b], inflow(xp_pt, v), -v[d]);
          }
        }
        for (int ad = 0; ad < n; ++ad) {
          const double cm = s[d] * xhi_[ad] / w[ad];
          const double cp = s[d] * xlo_[ad] / w[ad];
          double* rm = Rm + idx(ad, t) * npv;
          double* rp = Rp + idx(ad, t) * npv;
          for (int b = 0; b < npv; ++b) {
            rm[b] -= cm * flux[b];
            rp[b] -= cp * flux_p[b];
          }
        }
      }
    }
  }
}

void TransportOperator::interpolate_to_x_points(const PhaseField& f, int ix, std::vector<double>& g) const {
  const auto& vs = *space_->v();
  const int npx = space_->x()->nodes_per_cell(), npv = vs.nodes_per_cell(), nq = qx_ * qx_;
  const std::size_t stride = static_cast<std::size_t>(vs.num_cells()) * npv;
  g.assign(nq * stride, 0.0);
  for (int iv = 0; iv < vs.num_cells(); ++iv) {
    const double* F = f.coeffs.data() + space_->block_offset(ix, iv);
    for (int q = 0; q < nq; ++q) {
      double* gq = g.data() + q * stride + iv * npv;
      for (int a = 0; a < npx; ++a) {
        const double L = interp_[q * npx + a];
        const double* Fa = F + a * npv;
        for (int b = 0; b < npv; ++b) gq[b] += L * Fa[b];
      }
    }
  }
}

namespace {

struct VTables {
  int n, npv;
  const std::vector<double>& d;
  const std::vector<double>& lo;
  const std::vector<double>& hi;
  const std::vector<double>& w;
  const std::vector<double>& vnode;
};

// Mass-inverted v-transport residual at one x-point with fluid velocity u.
void v_rate_at_point(const CartesianMesh2D& vm, const VTables& T, const Vec2& u, const double* g, double* r) {
  const int n = T.n, npv = T.npv;
  const Vec2 h = vm.cell_width();
  const double s[2] = {2.0 / h[0], 2.0 / h[1]};
  for (int iv = 0; iv < vm.num_cells(); ++iv) {
    const double* G = g + iv * npv;
    double* R = r + iv * npv;
    const double* vn = &T.vnode[iv * npv * 2];
    for (int b1 = 0; b1 < n; ++b1)
      for (int b0 = 0; b0 < n; ++b0) {
        double acc = 0.0;
        for (int q = 0; q < n; ++q) {
          const int j0 = q + n * b1, j1 = b0 + n * q;
          acc += s[0] * T.d[b0 * n + q] * (u[0] - vn[2 * j0]) * G[j0];
          acc += s[1] * T.d[b1 * n + q] * (u[1] - vn[2 * j1 + 1]) * G[j1];
        }
        R[b0 + n * b1] += acc;
      }
  }
  for (const Edge& e : vm.edges()) {
    const int d = e.axis;
    auto idx = [&](int ad, int t) { return d == 0 ? ad + n * t : t + n * ad; };
    const double c = u[d] - e.position;
    const double* Gm = g + e.minus_cell * npv;
    double* Rm = r + e.minus_cell * npv;
    if (!e.is_boundary) {
      const double* Gp = g + e.plus_cell * npv;
      double* Rp = r + e.plus_cell * npv;
      for (int t = 0; t < n; ++t) {
        double tm = 0.0, tp = 0.0;
        for (int ad = 0; ad < n; ++ad) {
          tm += T.hi[ad] * Gm[idx(ad, t)];
          tp += T.lo[ad] * Gp[idx(ad, t)];
        }
        const double flux = upwind_flux(tm, tp, c);
        for (int ad = 0; ad < n; ++ad) {
          Rm[idx(ad, t)] -= s[d] * T.hi[ad] / T.w[ad] * flux;
          Rp[idx(ad, t)] += s[d] * T.lo[ad] / T.w[ad] * flux;
        }
      }
    } else {
      const double cn = c * e.normal[d];
      if (cn <= 0.0) continue;
      const std::vector<double>& tr = e.normal[d] > 0.0 ? T.hi : T.lo;
      for (int t = 0; t < n; ++t) {
        double tm = 0.0;
        for (int ad = 0; ad < n; ++ad) tm += tr[ad] * Gm[idx(ad, t)];
        const double flux = cn * tm;
        for (int ad = 0; ad < n; ++ad) Rm[idx(ad, t)] -= s[d] * tr[ad] / T.w[ad] * flux;
      }
    }
  }
}

}  // namespace

void TransportOperator::apply_v(const VelocityField& u, const PhaseField& f, PhaseField& rate) const {
  const auto& xs = *space_->x();
  const auto& vs = *space_->v();
  const int npx = xs.nodes_per_cell(), npv = vs.nodes_per_cell(), nq = qx_ * qx_;
  const std::size_t stride = static_cast<std::size_t>(vs.num_cells()) * npv;
  rate.space = space_;
  rate.coeffs.assign(space_->num_dofs(), 0.0);
  const VTables T{vs.nodes_1d(), npv, dv_, vlo_, vhi_, vs.basis().node_weights(), vnode_};

  std::vector<double> g, rq(nq * stride);
  for (int ix = 0; ix < xs.num_cells(); ++ix) {
    interpolate_to_x_points(f, ix, g);
    std::fill(rq.begin(), rq.end(), 0.0);
    for (int q = 0; q < nq; ++q) {
      Vec2 uq{0.0, 0.0};
      for (int a = 0; a < npx; ++a) {
        uq[0] += interp_[q * npx + a] * u.comp[0].values[xs.dof(ix, a)];
        uq[1] += interp_[q * npx + a] * u.comp[1].values[xs.dof(ix, a)];
      }
      v_rate_at_point(vs.mesh(), T, uq, g.data() + q * stride, rq.data() + q * stride);
    }
    for (int iv = 0; iv < vs.num_cells(); ++iv) {
      double* R = rate.coeffs.data() + space_->block_offset(ix, iv);
      for (int a = 0; a < npx; ++a)
        for (int q = 0; q < nq; ++q) {
          const double P = project_[a * nq + q];
          const double* rr = rq.data() + q * stride + iv * npv;
          for (int b = 0; b < npv; ++b) R[a * npv + b] += P * rr[b];
        }
    }
  }
}

double TransportOperator::v_boundary_outflow(const VelocityField& u, const PhaseField& f,
                                             const SpaceFunction& psi) const {
  const auto& xs = *space_->x();
  const auto& vs = *space_->v();
  const auto& vm = vs.mesh();
  const int n = vs.nodes_1d(), npx = xs.nodes_per_cell(), npv = vs.nodes_per_cell(), nq = qx_ * qx_;
  const std::size_t stride = static_cast<std::size_t>(vs.num_cells()) * npv;
  const auto& wref = vs.basis().node_weights();
  std::vector<double> g;
  double total = 0.0;
  for (int ix = 0; ix < xs.num_cells(); ++ix) {
    interpolate_to_x_points(f, ix, g);
    for (int q = 0; q < nq; ++q) {
      Vec2 uq{0.0, 0.0};
      for (int a = 0; a < npx; ++a) {
        uq[0] += interp_[q * npx + a] * u.comp[0].values[xs.dof(ix, a)];
        uq[1] += interp_[q * npx + a] * u.comp[1].values[xs.dof(ix, a)];
      }
      for (const Edge& e : vm.edges()) {
        if (!e.is_boundary) continue;
        const int d = e.axis, ta = 1 - d;
        const double cn = (uq[d] - e.position) * e.normal[d];
        if (cn <= 0.0) continue;
        const std::vector<double>& tr = e.normal[d] > 0.0 ? vhi_ : vlo_;
        const double* G = g.data() + q * stride + e.minus_cell * npv;
        for (int t = 0; t < n; ++t) {
          double trace = 0.0;
          for (int ad = 0; ad < n; ++ad) trace += tr[ad] * G[d == 0 ? ad + n * t : t + n * ad];
          Vec2 v{};
          v[d] = e.position;
          v[ta] = vs.node(e.minus_cell, d == 0 ? n * t : t)[ta];
          total += qweight_[q] * cn * trace * psi(v) * wref[t] * 0.5 * vm.cell_width()[ta];
        }
      }
    }
  }
  return total;
}

PhaseField apply_x_transport(const PhaseField& f, const XInflow& inflow) {
  PhaseField r(f.space);
  TransportOperator(f.space).apply_x(f, r, inflow);
  return r;
}

PhaseField apply_v_transport(const VelocityField& u, const PhaseField& f) {
  PhaseField r(f.space);
  TransportOperator(f.space).apply_v(u, f, r);
  return r;
}

PhaseField apply_semi_discrete(const VelocityField& u, const PhaseField& f) {
  const TransportOperator op(f.space);
  PhaseField rx(f.space), rv(f.space);
  op.apply_x(f, rx);
  op.apply_v(u, f, rv);
  axpy(1.0, rv, rx);
  return rx;
}

}  // namespace vsdg
