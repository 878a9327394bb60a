#pragma once

#include <vector>

#include "cavthermo/liouvillian.hpp"

namespace cavthermo {

struct EvolveOptions {
  /// > 0: integrate with exactly this step (order-of-accuracy tests).
  double fixed_dt = 0.0;
  /// Step-doubling local error target per step (adaptive mode).
  double local_tol = 1e-10;
  double min_dt = 1e-9;
};

/// Classic 4th-order Runge-Kutta on the vectorized generator with
/// step-doubling control. States are sampled exactly at `t_grid`
/// (increasing, starting from t = 0 where rho0 lives).
std::vector<DensityMatrix> evolve(const Liouvillian& liouvillian,
                                  const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid,
                                  const EvolveOptions& options = {});

}  // namespace cavthermo
