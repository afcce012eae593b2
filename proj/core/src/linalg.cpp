#include "vsdg/linalg.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#ifdef VSDG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

namespace vsdg {

SparseOperator::SparseOperator(int rows, int cols, const std::vector<Triplet>& entries)
    : m_(rows, cols) {
  m_.setFromTriplets(entries.begin(), entries.end());
  m_.makeCompressed();
}

bool SparseOperator::is_symmetric(double tol) const {
  if (rows() != cols()) return false;
  const Storage t = m_.transpose();
  const double diff = (m_ - t).norm();
  return diff <= tol * m_.norm();
}

double SparseOperator::bilinear(std::span<const double> x, std::span<const double> y) const {
  const auto ay = spmv(*this, y);
  if (x.size() != ay.size()) throw std::invalid_argument("bilinear: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * ay[i];
  return s;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(m_.nonZeros());
  for (int k = 0; k < m_.outerSize(); ++k)
    for (Storage::InnerIterator it(m_, k); it; ++it) out.emplace_back(it.row(), it.col(), it.value());
  return out;
}

std::vector<double> spmv(const SparseOperator& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    std::ostringstream msg;
    msg << "spmv: matrix has " << a.cols() << " columns, vector has " << x.size() << " entries";
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> y(a.rows(), 0.0);
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size());
  Eigen::Map<Eigen::VectorXd> yv(y.data(), y.size());
  yv.noalias() = a.matrix() * xv;
  return y;
}

struct DirectSolver::Impl {
#ifdef VSDG_HAVE_UMFPACK
  Eigen::UmfPackLU<SparseOperator::Storage> lu;
  std::string error() const { return "UMFPACK status " + std::to_string(lu.umfpackFactorizeReturncode()); }
#else
  Eigen::SparseLU<SparseOperator::Storage, Eigen::COLAMDOrdering<int>> lu;
  std::string error() const { return lu.lastErrorMessage(); }
#endif
};

DirectSolver::DirectSolver(const SparseOperator& a) : impl_(std::make_unique<Impl>()), a_(a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("DirectSolver: matrix must be square");
  impl_->lu.analyzePattern(a.matrix());
  impl_->lu.factorize(a.matrix());
  if (impl_->lu.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sparse LU failed (" << impl_->error() << "): matrix is singular";
    throw SolverError(msg.str());
  }
}

DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

std::vector<double> DirectSolver::solve(std::span<const double> b, double tol) const {
  if (static_cast<int>(b.size()) != a_.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), b.size());
  Eigen::VectorXd x = impl_->lu.solve(bv);
  const double bnorm = bv.norm();
  const double rnorm = (a_.matrix() * x - bv).norm();
  if (!x.allFinite() || rnorm > tol * bnorm) {
    std::ostringstream msg;
    msg << "direct solve: relative residual " << (bnorm > 0 ? rnorm / bnorm : rnorm)
        << " exceeds " << tol << " (matrix numerically singular)";
    throw SolverError(msg.str());
  }
  return {x.data(), x.data() + x.size()};
}

std::vector<double> factor_solve(const SparseOperator& a, std::span<const double> b) {
  return DirectSolver(a).solve(b);
}

}  // namespace vsdg
