#pragma once

#include <optional>

#include "cavthermo/types.hpp"

namespace cavthermo {

/// Validated quantum state: Hermitian, unit trace, positive semidefinite up
/// to truncation round-off. Eigendecomposition is computed lazily and cached.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator rho);

  static DensityMatrix vacuum(Index dim);
  /// Pure coherent state |alpha> on a truncated Fock space.
  static DensityMatrix coherent(Index n_max, Complex alpha);

  const Operator& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

  const RealVector& eigenvalues() const;
  const Matrix& eigenvectors() const;

  double purity() const;
  double min_eigenvalue() const;

 private:
  void ensure_eig() const;

  Operator rho_;
  mutable std::optional<std::pair<RealVector, Matrix>> eig_;
};

/// Von Neumann entropy -sum lambda ln lambda over eigenvalues > kEigFloor.
double vn_entropy(const DensityMatrix& rho);

/// ln(rho) with eigenvalues floored at `floor`.
Operator matrix_log(const DensityMatrix& rho, double floor = kEigFloor);

struct EntropyRateDiagnostics {
  int floored_eigenvalues = 0;
  bool conditioning_warning = false;
};

/// -Tr{drho ln rho}; drho must be traceless Hermitian.
double entropy_rate(const DensityMatrix& rho, const Operator& drho,
                    EntropyRateDiagnostics* diag = nullptr);

}  // namespace cavthermo
