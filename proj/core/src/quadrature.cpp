#include "vsdg/quadrature.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vsdg {

namespace {

// Legendre P_n and its derivative at x by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need at least one point");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

NodalBasis1D::NodalBasis1D(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("NodalBasis1D: degree must be >= 0");
  const QuadratureRule g = gauss_rule(degree + 1);
  nodes_ = g.points;
  node_weights_ = g.weights;
  bary_.assign(size(), 1.0);
  for (int j = 0; j < size(); ++j)
    for (int m = 0; m < size(); ++m)
      if (m != j) bary_[j] /= (nodes_[j] - nodes_[m]);
}

void NodalBasis1D::eval(double xi, double* out) const {
  const int n = size();
  for (int j = 0; j < n; ++j) {
    if (xi == nodes_[j]) {
      for (int m = 0; m < n; ++m) out[m] = (m == j) ? 1.0 : 0.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; ++j) {
    out[j] = bary_[j] / (xi - nodes_[j]);
    denom += out[j];
  }
  for (int j = 0; j < n; ++j) out[j] /= denom;
}

void NodalBasis1D::eval_deriv(double xi, double* out) const {
  // At a node use the differentiation-matrix entries directly.
  const int n = size();
  int hit = -1;
  for (int j = 0; j < n; ++j)
    if (xi == nodes_[j]) hit = j;
  if (hit >= 0) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == hit) continue;
      out[j] = (bary_[j] / bary_[hit]) / (nodes_[hit] - nodes_[j]);
      diag -= out[j];
    }
    out[hit] = diag;
    return;
  }
  std::vector<double> val(n);
  eval(xi, val.data());
  // Barycentric: l_j = w_j/(x-x_j) / D, D = sum w_m/(x-x_m).
  // l_j' = l_j * ( -1/(x-x_j) + sum_m l_m/(x-x_m) ).
  double t = 0.0;
  for (int m = 0; m < n; ++m) t += val[m] / (xi - nodes_[m]);
  for (int j = 0; j < n; ++j) out[j] = val[j] * (t - 1.0 / (xi - nodes_[j]));
}

std::vector<double> NodalBasis1D::eval(double xi) const {
  std::vector<double> v(size());
  eval(xi, v.data());
  return v;
}

std::vector<double> NodalBasis1D::eval_deriv(double xi) const {
  std::vector<double> v(size());
  eval_deriv(xi, v.data());
  return v;
}

std::vector<double> eval_basis(const NodalBasis1D& basis, double xi) { return basis.eval(xi); }

std::vector<double> eval_basis_deriv(const NodalBasis1D& basis, double xi) {
  return basis.eval_deriv(xi);
}

LineTable tabulate(const NodalBasis1D& basis, const QuadratureRule& rule) {
  LineTable t;
  t.n_basis = basis.size();
  t.n_points = rule.size();
  t.value.resize(t.n_basis * t.n_points);
  t.deriv.resize(t.n_basis * t.n_points);
  for (int q = 0; q < t.n_points; ++q) {
    basis.eval(rule.points[q], &t.value[q * t.n_basis]);
    basis.eval_deriv(rule.points[q], &t.deriv[q * t.n_basis]);
  }
  t.trace_lo = basis.eval(-1.0);
  t.trace_hi = basis.eval(1.0);
  return t;
}

std::vector<double> l2_project_element(const std::function<double(double, double)>& target,
                                       const NodalBasis1D& basis, const QuadratureRule& quad) {
  const int n = basis.size();
  const LineTable t = tabulate(basis, quad);
  std::vector<double> c(n * n, 0.0);
  for (int q1 = 0; q1 < quad.size(); ++q1) {
    for (int q0 = 0; q0 < quad.size(); ++q0) {
      const double g = target(quad.points[q0], quad.points[q1]) * quad.weights[q0] * quad.weights[q1];
      for (int a1 = 0; a1 < n; ++a1)
        for (int a0 = 0; a0 < n; ++a0)
          c[a0 + n * a1] += g * t.value[q0 * n + a0] * t.value[q1 * n + a1];
    }
  }
  // The Gauss-node mass matrix is diag(w_a0 w_a1).
  const auto& w = basis.node_weights();
  for (int a1 = 0; a1 < n; ++a1)
    for (int a0 = 0; a0 < n; ++a0) c[a0 + n * a1] /= (w[a0] * w[a1]);
  assert(quad.size() >= n);
  return c;
}

std::vector<double> l2_project_element_1d(const std::function<double(double)>& target,
                                          const NodalBasis1D& basis, const QuadratureRule& quad) {
  const int n = basis.size();
  const LineTable t = tabulate(basis, quad);
  std::vector<double> c(n, 0.0);
  for (int q = 0; q < quad.size(); ++q) {
    const double g = target(quad.points[q]) * quad.weights[q];
    for (int a = 0; a < n; ++a) c[a] += g * t.value[q * n + a];
  }
  for (int a = 0; a < n; ++a) c[a] /= basis.node_weights()[a];
  return c;
}

}  // namespace vsdg
