#pragma once

#include <functional>
#include <vector>

namespace vsdg {

/// Quadrature on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
/// Throws std::invalid_argument for n < 1.
QuadratureRule gauss_rule(int n);

/// Points per direction used for volume and edge integrals of the Stokes
/// forms and the velocity-space transport: ceil((3k+2)/2), enough for
/// products of three degree-k factors.
inline int default_quadrature_points(int degree) { return (3 * degree + 3) / 2; }

/// Points per direction for projecting initial data and measuring errors.
inline int projection_quadrature_points(int degree) { return degree + 3; }

/// Lagrange basis of degree k on [-1, 1] with the k+1 Gauss-Legendre points
/// as nodes. Evaluation uses the barycentric form.
class NodalBasis1D {
 public:
  explicit NodalBasis1D(int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  /// Gauss weights belonging to the nodes; with these the collocated mass
  /// matrix is diag(weights) and exact.
  const std::vector<double>& node_weights() const { return node_weights_; }
  const std::vector<double>& barycentric_weights() const { return bary_; }

  void eval(double xi, double* out) const;
  void eval_deriv(double xi, double* out) const;
  std::vector<double> eval(double xi) const;
  std::vector<double> eval_deriv(double xi) const;

 private:
  int degree_;
  std::vector<double> nodes_;
  std::vector<double> node_weights_;
  std::vector<double> bary_;
};

std::vector<double> eval_basis(const NodalBasis1D& basis, double xi);
std::vector<double> eval_basis_deriv(const NodalBasis1D& basis, double xi);

/// Basis values and derivatives tabulated at the points of a rule, plus the
/// traces at xi = -1 and xi = +1. Row-major: value[q * n + a] = l_a(xi_q).
struct LineTable {
  int n_basis = 0;
  int n_points = 0;
  std::vector<double> value;
  std::vector<double> deriv;
  std::vector<double> trace_lo;
  std::vector<double> trace_hi;
};

LineTable tabulate(const NodalBasis1D& basis, const QuadratureRule& rule);

/// L2 projection of `target` (given in reference coordinates of [-1,1]^2)
/// onto the tensor-product space Q_k, node a = a0 + (k+1) a1. Exact for
/// targets in Q_k whenever `quad` integrates degree 2k exactly.
std::vector<double> l2_project_element(const std::function<double(double, double)>& target,
                                       const NodalBasis1D& basis, const QuadratureRule& quad);

/// One-dimensional variant of l2_project_element.
std::vector<double> l2_project_element_1d(const std::function<double(double)>& target,
                                          const NodalBasis1D& basis, const QuadratureRule& quad);

}  // namespace vsdg
