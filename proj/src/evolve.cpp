#include "cavthermo/evolve.hpp"

#include <algorithm>
#include <cmath>

namespace cavthermo {

namespace {

Vector rk4_step(const SparseMatrix& gen, const Vector& v, double h) {
  const Vector k1 = gen * v;
  const Vector k2 = gen * (v + (0.5 * h) * k1).eval();
  const Vector k3 = gen * (v + (0.5 * h) * k2).eval();
  const Vector k4 = gen * (v + h * k3).eval();
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double generator_scale(const SparseMatrix& m) {
  RealVector row_sums = RealVector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      row_sums(it.row()) += std::abs(it.value());
    }
  }
  return row_sums.size() ? row_sums.maxCoeff() : 1.0;
}

double trace_of_vec(const Vector& v, Index dim) {
  Complex tr = 0.0;
  for (Index k = 0; k < dim; ++k) tr += v(k * dim + k);
  return tr.real();
}

}  // namespace

std::vector<DensityMatrix> evolve(const Liouvillian& liouvillian,
                                  const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid,
                                  const EvolveOptions& options) {
  if (rho0.dim() != liouvillian.model.dim()) {
    throw DimensionMismatchError("evolve: initial state dimension mismatch");
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0 || (i > 0 && t_grid[i] <= t_grid[i - 1])) {
      throw PreconditionError("evolve: t_grid must be increasing and >= 0");
    }
  }
  const SparseMatrix& gen = liouvillian.total.matrix();
  const Index dim = liouvillian.model.dim();
  const double scale = generator_scale(gen);
  // RK4 stability limit |lambda| h < 2.8; the row norm bounds the spectrum.
  const double h_stable = 2.0 / std::max(scale, 1e-30);

  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  Vector v = vectorize(rho0.matrix());
  double t = 0.0;
  double h = options.fixed_dt > 0 ? options.fixed_dt : h_stable;

  for (double target : t_grid) {
    while (t < target - 1e-15 * std::max(1.0, target)) {
      double step = std::min(h, target - t);
      if (options.fixed_dt > 0) {
        v = rk4_step(gen, v, step);
        t += step;
        continue;
      }
      step = std::min(step, h_stable);
      const Vector big = rk4_step(gen, v, step);
      const Vector half = rk4_step(gen, rk4_step(gen, v, 0.5 * step), 0.5 * step);
      const double err = (big - half).cwiseAbs().maxCoeff() / 15.0;
      const double tol = options.local_tol * std::max(1.0, v.cwiseAbs().maxCoeff());
      if (err <= tol) {
        // Richardson-extrapolated accept
        v = half + (half - big) / 15.0;
        t += step;
        const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
        h = std::min(h_stable, step * std::clamp(grow, 0.2, 2.5));
      } else {
        h = step * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.9);
        if (h < options.min_dt) {
          throw ConvergenceFailureError("evolve: step underflow (stiffness)",
                                        err);
        }
      }
    }
    const double drift = std::abs(trace_of_vec(v, dim) - 1.0);
    if (drift > 1e-9 * std::max(1.0, t)) {
      throw NumericalFailureError("evolve: trace drift " +
                                  std::to_string(drift) + " at t = " +
                                  std::to_string(t));
    }
    Matrix rho = unvectorize(v, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    out.emplace_back(rho);
  }
  return out;
}

}  // namespace cavthermo
