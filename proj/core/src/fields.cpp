#include "vsdg/fields.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace vsdg {

DGSpace2D::DGSpace2D(CartesianMesh2D mesh, int degree) : mesh_(std::move(mesh)), basis_(degree) {
  const int n = nodes_1d();
  const double jac = 0.25 * mesh_.cell_area();
  weights_.resize(n * n);
  for (int a1 = 0; a1 < n; ++a1)
    for (int a0 = 0; a0 < n; ++a0)
      weights_[a0 + n * a1] = basis_.node_weights()[a0] * basis_.node_weights()[a1] * jac;
}

Vec2 DGSpace2D::reference_node(int a) const {
  const int n = nodes_1d();
  return {basis_.nodes()[a % n], basis_.nodes()[a / n]};
}

Vec2 DGSpace2D::node(int cell, int a) const { return mesh_.map_to_physical(cell, reference_node(a)); }

double ScalarField::evaluate(int cell, const Vec2& xi) const {
  const int n = space->nodes_1d();
  std::vector<double> l0(n), l1(n);
  space->basis().eval(xi[0], l0.data());
  space->basis().eval(xi[1], l1.data());
  const double* c = values.data() + space->dof(cell, 0);
  double s = 0.0;
  for (int a1 = 0; a1 < n; ++a1)
    for (int a0 = 0; a0 < n; ++a0) s += c[a0 + n * a1] * l0[a0] * l1[a1];
  return s;
}

double ScalarField::integral() const {
  double s = 0.0;
  const int npc = space->nodes_per_cell();
  for (int c = 0; c < space->num_cells(); ++c)
    for (int a = 0; a < npc; ++a) s += space->node_weight(a) * values[space->dof(c, a)];
  return s;
}

double PressureField::mean() const {
  const auto& m = values.space->mesh();
  const double area = (m.domain().upper[0] - m.domain().lower[0]) * (m.domain().upper[1] - m.domain().lower[1]);
  return values.integral() / area;
}

PhaseSpace::PhaseSpace(std::shared_ptr<const DGSpace2D> x, std::shared_ptr<const DGSpace2D> v)
    : x_(std::move(x)), v_(std::move(v)), mesh_(build_phase_mesh(x_->mesh(), v_->mesh())) {}

std::shared_ptr<const PhaseSpace> make_phase_space(const Rectangle& xdomain, std::array<int, 2> xcells,
                                                   int kx, const Rectangle& vdomain,
                                                   std::array<int, 2> vcells, int kv) {
  auto xs = std::make_shared<const DGSpace2D>(build_mesh(xdomain, xcells, {true, true}), kx);
  auto vs = std::make_shared<const DGSpace2D>(build_mesh(vdomain, vcells, {false, false}), kv);
  return std::make_shared<const PhaseSpace>(xs, vs);
}

double PhaseField::evaluate(int ix, int iv, const Vec2& xi_x, const Vec2& xi_v) const {
  const auto& xs = *space->x();
  const auto& vs = *space->v();
  const int nx = xs.nodes_1d(), nv = vs.nodes_1d();
  std::vector<double> lx0(nx), lx1(nx), lv0(nv), lv1(nv);
  xs.basis().eval(xi_x[0], lx0.data());
  xs.basis().eval(xi_x[1], lx1.data());
  vs.basis().eval(xi_v[0], lv0.data());
  vs.basis().eval(xi_v[1], lv1.data());
  const auto blk = block(ix, iv);
  const int npv = vs.nodes_per_cell();
  double s = 0.0;
  for (int a = 0; a < xs.nodes_per_cell(); ++a) {
    const double la = lx0[a % nx] * lx1[a / nx];
    for (int b = 0; b < npv; ++b) s += blk[a * npv + b] * la * lv0[b % nv] * lv1[b / nv];
  }
  return s;
}

double inner_product(const PhaseField& a, const PhaseField& b) {
  assert(a.space == b.space);
  const auto& S = *a.space;
  const int npx = S.x()->nodes_per_cell(), npv = S.v()->nodes_per_cell();
  const auto& wx = S.x()->node_weights();
  const auto& wv = S.v()->node_weights();
  double total = 0.0;
  const int ne = S.mesh().num_elements();
  for (int e = 0; e < ne; ++e) {
    const double* pa = a.coeffs.data() + static_cast<std::size_t>(e) * S.block_size();
    const double* pb = b.coeffs.data() + static_cast<std::size_t>(e) * S.block_size();
    double s = 0.0;
    for (int i = 0; i < npx; ++i) {
      double si = 0.0;
      for (int j = 0; j < npv; ++j) si += wv[j] * pa[i * npv + j] * pb[i * npv + j];
      s += wx[i] * si;
    }
    total += s;
  }
  return total;
}

double l2_norm(const PhaseField& f) { return std::sqrt(inner_product(f, f)); }

void axpy(double alpha, const PhaseField& g, PhaseField& f) {
  if (g.coeffs.size() != f.coeffs.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] += alpha * g.coeffs[i];
}

}  // namespace vsdg
