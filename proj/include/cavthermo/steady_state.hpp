#pragma once

#include "cavthermo/liouvillian.hpp"

namespace cavthermo {

enum class SteadyStateMethod { Auto, DenseNull, SparseDirect, EvolveToStationary };

SteadyStateMethod steady_state_method_from_string(const std::string& s);
std::string to_string(SteadyStateMethod m);

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::Auto;
  double tol = 1e-10;
  /// Auto switches from dense null-space to sparse direct above this dim.
  Index dense_dim_limit = 64;
  double evolve_t_max = 400.0;
};

/// Unique fixed point of the generator, normalized and validated.
/// Throws ConvergenceFailureError / DegenerateSteadyStateError.
DensityMatrix steady_state(const Liouvillian& liouvillian,
                           const SteadyStateOptions& options = {});

/// ||L vec(rho)||_2 / ||L||_inf -- the residual measure used by the solver.
double steady_state_residual(const Liouvillian& liouvillian,
                             const DensityMatrix& rho);

}  // namespace cavthermo
