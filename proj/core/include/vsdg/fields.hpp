#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "vsdg/mesh.hpp"
#include "vsdg/quadrature.hpp"

namespace vsdg {

/// Broken tensor-product polynomial space Q_k on a 2D Cartesian mesh with a
/// nodal Gauss-Legendre basis. Local node a = a0 + (k+1) a1; global dof
/// cell * (k+1)^2 + a.
class DGSpace2D {
 public:
  DGSpace2D(CartesianMesh2D mesh, int degree);

  const CartesianMesh2D& mesh() const { return mesh_; }
  const NodalBasis1D& basis() const { return basis_; }
  int degree() const { return basis_.degree(); }
  int nodes_1d() const { return basis_.size(); }
  int nodes_per_cell() const { return nodes_1d() * nodes_1d(); }
  int num_cells() const { return mesh_.num_cells(); }
  int num_dofs() const { return num_cells() * nodes_per_cell(); }
  int dof(int cell, int a) const { return cell * nodes_per_cell() + a; }

  /// Physical position of local node a of `cell`.
  Vec2 node(int cell, int a) const;
  /// Reference coordinates of local node a.
  Vec2 reference_node(int a) const;
  /// Collocated mass weight of a node (equals the diagonal mass entry).
  double node_weight(int a) const { return weights_[a]; }
  const std::vector<double>& node_weights() const { return weights_; }

 private:
  CartesianMesh2D mesh_;
  NodalBasis1D basis_;
  std::vector<double> weights_;
};

/// Scalar dG function on a DGSpace2D.
struct ScalarField {
  std::shared_ptr<const DGSpace2D> space;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(std::shared_ptr<const DGSpace2D> s)
      : space(std::move(s)), values(space->num_dofs(), 0.0) {}

  double evaluate(int cell, const Vec2& xi) const;
  double integral() const;
};

/// Fluid velocity u_h in U_h.
struct VelocityField {
  std::array<ScalarField, 2> comp;

  VelocityField() = default;
  explicit VelocityField(const std::shared_ptr<const DGSpace2D>& s) : comp{ScalarField(s), ScalarField(s)} {}
  Vec2 evaluate(int cell, const Vec2& xi) const {
    return {comp[0].evaluate(cell, xi), comp[1].evaluate(cell, xi)};
  }
};

/// Pressure p_h in P_h (zero mean).
struct PressureField {
  ScalarField values;

  PressureField() = default;
  explicit PressureField(const std::shared_ptr<const DGSpace2D>& s) : values(s) {}
  double mean() const;
};

/// Projects a scalar function onto a DGSpace2D with `points` Gauss points per
/// direction.
template <class Fn>
ScalarField project_scalar(const std::shared_ptr<const DGSpace2D>& space, Fn&& fn, int points);

/// Phase space Z_h = X_h (x) V_h over T_x x T_v. Coefficients are stored
/// element-major: [x-cell][v-cell][x-node][v-node].
class PhaseSpace {
 public:
  PhaseSpace(std::shared_ptr<const DGSpace2D> x, std::shared_ptr<const DGSpace2D> v);

  const std::shared_ptr<const DGSpace2D>& x() const { return x_; }
  const std::shared_ptr<const DGSpace2D>& v() const { return v_; }
  const PhaseMesh& mesh() const { return mesh_; }
  int block_size() const { return x_->nodes_per_cell() * v_->nodes_per_cell(); }
  std::size_t num_dofs() const {
    return static_cast<std::size_t>(mesh_.num_elements()) * block_size();
  }
  std::size_t block_offset(int ix, int iv) const {
    return static_cast<std::size_t>(mesh_.element_index(ix, iv)) * block_size();
  }
  std::size_t index(int ix, int iv, int a, int b) const {
    return block_offset(ix, iv) + static_cast<std::size_t>(a) * v_->nodes_per_cell() + b;
  }

 private:
  std::shared_ptr<const DGSpace2D> x_;
  std::shared_ptr<const DGSpace2D> v_;
  PhaseMesh mesh_;
};

/// Builds x- and v-spaces and the phase space in one go. The x-mesh is made
/// periodic, the v-mesh non-periodic.
std::shared_ptr<const PhaseSpace> make_phase_space(const Rectangle& xdomain, std::array<int, 2> xcells,
                                                   int kx, const Rectangle& vdomain,
                                                   std::array<int, 2> vcells, int kv);

/// Distribution function f_h in Z_h.
struct PhaseField {
  std::shared_ptr<const PhaseSpace> space;
  std::vector<double> coeffs;

  PhaseField() = default;
  explicit PhaseField(std::shared_ptr<const PhaseSpace> s)
      : space(std::move(s)), coeffs(space->num_dofs(), 0.0) {}

  std::span<double> block(int ix, int iv) {
    return {coeffs.data() + space->block_offset(ix, iv), static_cast<std::size_t>(space->block_size())};
  }
  std::span<const double> block(int ix, int iv) const {
    return {coeffs.data() + space->block_offset(ix, iv), static_cast<std::size_t>(space->block_size())};
  }
  double evaluate(int ix, int iv, const Vec2& xi_x, const Vec2& xi_v) const;
};

/// L2(Omega) inner product of two phase fields on the same space (exact).
double inner_product(const PhaseField& a, const PhaseField& b);
double l2_norm(const PhaseField& f);

/// f += alpha * g.
void axpy(double alpha, const PhaseField& g, PhaseField& f);

/// Discrete density rho_h and momentum density (rho V)_h on the x-mesh.
struct MomentPair {
  ScalarField rho;
  std::array<ScalarField, 2> rho_v;
};

// ---------------------------------------------------------------------------

template <class Fn>
ScalarField project_scalar(const std::shared_ptr<const DGSpace2D>& space, Fn&& fn, int points) {
  ScalarField out(space);
  const QuadratureRule rule = gauss_rule(points);
  const LineTable t = tabulate(space->basis(), rule);
  const int n = space->nodes_1d();
  const auto& w = space->basis().node_weights();
  for (int c = 0; c < space->num_cells(); ++c) {
    double* dst = out.values.data() + space->dof(c, 0);
    for (int q1 = 0; q1 < rule.size(); ++q1)
      for (int q0 = 0; q0 < rule.size(); ++q0) {
        const Vec2 x = space->mesh().map_to_physical(c, {rule.points[q0], rule.points[q1]});
        const double g = fn(x) * rule.weights[q0] * rule.weights[q1];
        for (int a1 = 0; a1 < n; ++a1)
          for (int a0 = 0; a0 < n; ++a0)
            dst[a0 + n * a1] += g * t.value[q0 * n + a0] * t.value[q1 * n + a1];
      }
    for (int a1 = 0; a1 < n; ++a1)
      for (int a0 = 0; a0 < n; ++a0) dst[a0 + n * a1] /= (w[a0] * w[a1]);
  }
  return out;
}

}  // namespace vsdg
