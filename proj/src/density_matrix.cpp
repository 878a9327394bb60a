#include "cavthermo/density_matrix.hpp"

#include <cmath>

#include "cavthermo/operators.hpp"

namespace cavthermo {

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw InvalidDimensionError("DensityMatrix: matrix must be square");
  }
  const double scale = std::max(1.0, max_abs(rho_));
  if (max_abs(rho_ - rho_.adjoint()) > kHermTol * scale) {
    throw NumericalFailureError("DensityMatrix: not Hermitian");
  }
  const double tr = rho_.trace().real();
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw NumericalFailureError("DensityMatrix: trace " + std::to_string(tr) +
                                " is not 1");
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  ensure_eig();
  if (eig_->first.minCoeff() < kPsdTol) {
    throw NumericalFailureError(
        "DensityMatrix: eigenvalue " + std::to_string(eig_->first.minCoeff()) +
        " below PSD tolerance");
  }
}

DensityMatrix DensityMatrix::vacuum(Index dim) {
  Operator rho = Operator::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::coherent(Index n_max, Complex alpha) {
  Vector c(n_max);
  c(0) = 1.0;
  for (Index n = 1; n < n_max; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  c /= c.norm();
  return DensityMatrix((c * c.adjoint()).eval());
}

void DensityMatrix::ensure_eig() const {
  if (eig_) return;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailureError("DensityMatrix: eigendecomposition failed");
  }
  eig_ = std::make_pair(solver.eigenvalues(), solver.eigenvectors());
}

const RealVector& DensityMatrix::eigenvalues() const {
  ensure_eig();
  return eig_->first;
}

const Matrix& DensityMatrix::eigenvectors() const {
  ensure_eig();
  return eig_->second;
}

double DensityMatrix::purity() const {
  return (rho_ * rho_).trace().real();
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues().minCoeff(); }

double vn_entropy(const DensityMatrix& rho) {
  const RealVector& w = rho.eigenvalues();
  double s = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    if (w(i) > kEigFloor) s -= w(i) * std::log(w(i));
  }
  return std::max(0.0, s);
}

Operator matrix_log(const DensityMatrix& rho, double floor) {
  const RealVector& w = rho.eigenvalues();
  const Matrix& v = rho.eigenvectors();
  RealVector lw(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    lw(i) = std::log(std::max(w(i), floor));
  }
  return v * lw.asDiagonal() * v.adjoint();
}

double entropy_rate(const DensityMatrix& rho, const Operator& drho,
                    EntropyRateDiagnostics* diag) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw DimensionMismatchError("entropy_rate: dimension mismatch");
  }
  if (std::abs(drho.trace()) > 1e-8 ||
      max_abs(drho - drho.adjoint()) > 1e-8 * std::max(1.0, max_abs(drho))) {
    throw PreconditionError("entropy_rate: drho must be traceless Hermitian");
  }
  if (diag) {
    const RealVector& w = rho.eigenvalues();
    diag->floored_eigenvalues = 0;
    for (Index i = 0; i < w.size(); ++i) {
      if (w(i) < kEigFloor) ++diag->floored_eigenvalues;
    }
    diag->conditioning_warning = diag->floored_eigenvalues > 0;
  }
  return -expectation(drho, matrix_log(rho)).real();
}

}  // namespace cavthermo
