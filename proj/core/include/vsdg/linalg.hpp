#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

namespace vsdg {

/// Raised when a linear system cannot be solved to the required accuracy.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Triplet = Eigen::Triplet<double>;

/// Assembled bilinear form as a compressed sparse matrix. Duplicate triplets
/// are summed; assembled entries are kept even when they cancel to zero.
class SparseOperator {
 public:
  using Storage = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

  SparseOperator() = default;
  SparseOperator(int rows, int cols, const std::vector<Triplet>& entries);
  explicit SparseOperator(Storage m) : m_(std::move(m)) {}

  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  long nnz() const { return m_.nonZeros(); }
  double coeff(int i, int j) const { return m_.coeff(i, j); }
  const Storage& matrix() const { return m_; }

  /// ||A - A^T||_F <= tol * ||A||_F.
  bool is_symmetric(double tol = 1e-12) const;
  /// x^T A y.
  double bilinear(std::span<const double> x, std::span<const double> y) const;
  std::vector<Triplet> triplets() const;

 private:
  Storage m_;
};

/// y = A x. Throws std::invalid_argument on a dimension mismatch.
std::vector<double> spmv(const SparseOperator& a, std::span<const double> x);

/// Sparse LU factorization (UMFPACK if the build found it, else Eigen SparseLU
/// with COLAMD). Construction throws SolverError if the matrix is structurally
/// or numerically singular.
class DirectSolver {
 public:
  explicit DirectSolver(const SparseOperator& a);
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  /// Solves A x = b and verifies ||A x - b|| <= tol ||b||; throws SolverError
  /// otherwise.
  std::vector<double> solve(std::span<const double> b, double tol = 1e-10) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SparseOperator a_;
};

std::vector<double> factor_solve(const SparseOperator& a, std::span<const double> b);

}  // namespace vsdg
