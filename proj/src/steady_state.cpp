#include "cavthermo/steady_state.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "cavthermo/evolve.hpp"
#include "cavthermo/operators.hpp"

namespace cavthermo {

namespace {

double inf_norm(const SparseMatrix& m) {
  RealVector row_sums = RealVector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      row_sums(it.row()) += std::abs(it.value());
    }
  }
  return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}

/// Vectorized generator with row 0 replaced by the trace constraint.
SparseMatrix bordered_system(const SparseMatrix& gen, Index dim) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(gen.nonZeros() + dim);
  for (int k = 0; k < gen.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(gen, k); it; ++it) {
      if (it.row() == 0) continue;
      trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Index k = 0; k < dim; ++k) {
    trips.emplace_back(0, k * dim + k, Complex(1.0, 0.0));
  }
  SparseMatrix bordered(gen.rows(), gen.cols());
  bordered.setFromTriplets(trips.begin(), trips.end());
  return bordered;
}

DensityMatrix state_from_vec(const Vector& v, Index dim) {
  Matrix rho = unvectorize(v, dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (!(std::abs(tr) > 1e-3)) {
    throw ConvergenceFailureError("steady_state: solution has negligible trace",
                                  1.0);
  }
  rho /= tr;
  return DensityMatrix(rho);
}

int null_space_dimension(const SparseMatrix& gen, double scale) {
  Eigen::ComplexEigenSolver<Matrix> solver(Matrix(gen));
  if (solver.info() != Eigen::Success) return -1;
  int count = 0;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i)) <= 1e-8 * std::max(1.0, scale)) {
      ++count;
    }
  }
  return count;
}

}  // namespace

SteadyStateMethod steady_state_method_from_string(const std::string& s) {
  if (s == "auto") return SteadyStateMethod::Auto;
  if (s == "dense-null") return SteadyStateMethod::DenseNull;
  if (s == "sparse-direct") return SteadyStateMethod::SparseDirect;
  if (s == "evolve") return SteadyStateMethod::EvolveToStationary;
  throw ConfigError("unknown steady-state method '" + s + "'");
}

std::string to_string(SteadyStateMethod m) {
  switch (m) {
    case SteadyStateMethod::Auto: return "auto";
    case SteadyStateMethod::DenseNull: return "dense-null";
    case SteadyStateMethod::SparseDirect: return "sparse-direct";
    case SteadyStateMethod::EvolveToStationary: return "evolve";
  }
  return "?";
}

double steady_state_residual(const Liouvillian& liouvillian,
                             const DensityMatrix& rho) {
  const Vector r = liouvillian.total.apply_vec(vectorize(rho.matrix()));
  const double norm_l = inf_norm(liouvillian.total.matrix());
  return r.norm() / std::max(1.0, norm_l);
}

DensityMatrix steady_state(const Liouvillian& liouvillian,
                           const SteadyStateOptions& options) {
  const Index dim = liouvillian.model.dim();
  SteadyStateMethod method = options.method;
  if (method == SteadyStateMethod::Auto) {
    method = dim <= options.dense_dim_limit ? SteadyStateMethod::DenseNull
                                            : SteadyStateMethod::SparseDirect;
  }
  const SparseMatrix& gen = liouvillian.total.matrix();
  const double norm_l = inf_norm(gen);

  if (method == SteadyStateMethod::EvolveToStationary) {
    Operator mixed = Operator::Identity(dim, dim);
    mixed /= static_cast<double>(dim);
    DensityMatrix rho{mixed};
    double t = 0.0;
    const double chunk = 2.0;
    while (t < options.evolve_t_max) {
      rho = evolve(liouvillian, rho, {chunk}, {}).back();
      t += chunk;
      if (steady_state_residual(liouvillian, rho) <= options.tol) return rho;
    }
    throw ConvergenceFailureError(
        "steady_state: evolve-to-stationary did not converge by t = " +
            std::to_string(options.evolve_t_max),
        steady_state_residual(liouvillian, rho));
  }

  const SparseMatrix bordered = bordered_system(gen, dim);
  Vector rhs = Vector::Zero(dim * dim);
  rhs(0) = 1.0;
  Vector x;
  bool solved = false;

  if (method == SteadyStateMethod::DenseNull) {
    Matrix dense(bordered);
    Eigen::PartialPivLU<Matrix> lu(dense);
    x = lu.solve(rhs);
    solved = x.allFinite();
  } else {
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(bordered);
    if (lu.info() == Eigen::Success) {
      x = lu.solve(rhs);
      solved = lu.info() == Eigen::Success && x.allFinite();
    }
  }

  double residual = std::numeric_limits<double>::infinity();
  if (solved) {
    residual = (gen * x).norm() / std::max(1.0, norm_l);
  }
  if (!solved || residual > options.tol) {
    if (dim <= options.dense_dim_limit) {
      const int null_dim = null_space_dimension(gen, norm_l);
      if (null_dim > 1) {
        throw DegenerateSteadyStateError(
            "steady_state: generator has a degenerate null space of dimension " +
                std::to_string(null_dim),
            null_dim);
      }
    }
    throw ConvergenceFailureError(
        "steady_state: residual " + std::to_string(residual) +
            " exceeds tolerance " + std::to_string(options.tol),
        residual);
  }
  return state_from_vec(x, dim);
}

}  // namespace cavthermo
