#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cavthermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Dense square complex matrix on the truncated Hilbert space.
using Operator = Matrix;

inline constexpr Complex kI{0.0, 1.0};

/// Eigenvalue floor for matrix logarithms of density matrices.
inline constexpr double kEigFloor = 1e-14;
/// Hermiticity / trace tolerances for state validation.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
/// Smallest admissible eigenvalue of a density matrix (truncation round-off).
inline constexpr double kPsdTol = -1e-8;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error {
  using Error::Error;
};
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct InvalidHamiltonianError : Error {
  using Error::Error;
};
struct NumericalFailureError : Error {
  using Error::Error;
};
struct ConvergenceFailureError : Error {
  ConvergenceFailureError(const std::string& what, double res)
      : Error(what), residual(res) {}
  double residual;
};
struct DegenerateSteadyStateError : Error {
  DegenerateSteadyStateError(const std::string& what, int dim)
      : Error(what), null_space_dim(dim) {}
  int null_space_dim;
};
struct TruncationError : Error {
  using Error::Error;
};
struct InternalConsistencyError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace cavthermo
