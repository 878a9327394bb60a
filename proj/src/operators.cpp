#include "cavthermo/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace cavthermo {

Operator fock_annihilation(Index n_max) {
  if (n_max < 2) {
    throw InvalidDimensionError("fock_annihilation: n_max must be >= 2, got " +
                                std::to_string(n_max));
  }
  Operator a = Operator::Zero(n_max, n_max);
  for (Index n = 0; n + 1 < n_max; ++n) {
    a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  }
  return a;
}

Operator fock_number(Index n_max) {
  Operator n = Operator::Zero(n_max, n_max);
  for (Index k = 0; k < n_max; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Operator kron(const Operator& a, const Operator& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

SparseMatrix kron_sparse(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

Complex expectation(const Operator& a, const Operator& rho) {
  if (a.rows() != rho.rows() || a.cols() != rho.cols()) {
    throw DimensionMismatchError(
        "expectation: operator is " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " but state is " +
        std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
  // Tr{A rho} = sum_ij A_ij rho_ji
  return a.cwiseProduct(rho.transpose()).sum();
}

double expectation_real(const Operator& a, const Operator& rho, double tol) {
  const Complex v = expectation(a, rho);
  if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real()))) {
    throw NumericalFailureError(
        "expectation_real: imaginary part " + std::to_string(v.imag()) +
        " exceeds tolerance");
  }
  return v.real();
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  return max_abs(a - a.adjoint()) <= tol * scale;
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

}  // namespace cavthermo
