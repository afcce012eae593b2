#pragma once

#include <array>
#include <functional>
#include <memory>

#include "vsdg/fields.hpp"
#include "vsdg/linalg.hpp"

namespace vsdg {

/// Symmetric interior penalty matrix of one velocity component. The penalty
/// is theta / h with h the cell width normal to the edge. Throws
/// std::invalid_argument for theta <= 0.
SparseOperator assemble_sip(const DGSpace2D& space, double penalty);

/// Matrix B_j with q^T B_j u = b_h(u e_j, q): rows are pressure dofs, columns
/// velocity dofs of component j.
SparseOperator assemble_coupling(const DGSpace2D& space, int component);

/// Pressure-jump stabilization s_h(p, q) = sum_F h int [[p]].[[q]].
SparseOperator assemble_pressure_stab(const DGSpace2D& space);

/// Weighted mass matrix (rho phi_j, phi_i), integrated exactly for degree 3k.
SparseOperator assemble_reaction(const ScalarField& rho);

using VectorFunction = std::function<Vec2(const Vec2& x)>;

struct StokesSolution {
  VelocityField u;
  PressureField p;
  /// Multiplier of the zero-mean constraint (zero for compatible data).
  double multiplier = 0.0;
};

/// Discrete generalized Stokes problem
///   a_h(u, phi) + b_h(phi, p) + (rho u, phi) = (m + G, phi),
///   -b_h(u, q) + s_h(p, q) = 0,  int p = 0,
/// on a periodic x-mesh. The SIP, coupling and stabilization blocks are
/// assembled once; the reaction block is rebuilt on every solve.
class StokesSolver {
 public:
  StokesSolver(std::shared_ptr<const DGSpace2D> space, double penalty);

  const std::shared_ptr<const DGSpace2D>& space() const { return space_; }
  double penalty() const { return penalty_; }
  const SparseOperator& sip() const { return sip_; }
  const SparseOperator& coupling(int component) const { return coupling_[component]; }
  const SparseOperator& stabilization() const { return stab_; }

  /// Full saddle-point matrix for density rho, unknowns [u1 | u2 | p | lambda].
  SparseOperator system_matrix(const ScalarField& rho) const;
  /// Load vector (momentum + G, phi) for both components followed by zeros.
  /// Either source may be absent.
  std::vector<double> load_vector(const std::array<ScalarField, 2>* momentum, const VectorFunction& g) const;

  /// Throws SolverError("indefinite reaction made system singular ...") when
  /// the factorization or the residual check fails.
  StokesSolution solve(const ScalarField& rho, const std::array<ScalarField, 2>* momentum,
                       const VectorFunction& g) const;

  double a_form(const VelocityField& u, const VelocityField& phi) const;
  double b_form(const VelocityField& u, const PressureField& q) const;
  double s_form(const PressureField& p, const PressureField& q) const;

 private:
  std::shared_ptr<const DGSpace2D> space_;
  double penalty_;
  SparseOperator sip_;
  std::array<SparseOperator, 2> coupling_;
  SparseOperator stab_;
  std::vector<Triplet> fixed_;  // saddle-point entries that do not depend on rho
};

}  // namespace vsdg
