#pragma once

#include <string>
#include <vector>

#include "cavthermo/steady_state.hpp"
#include "cavthermo/thermo.hpp"

namespace cavthermo {

struct AuditCheck {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status = Status::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string anchor;  // which identity of the framework this verifies
  std::string detail;
};

struct TolProfile {
  double strict_rel = 1e-9;   // algebraic identities, relative
  double numeric = 1e-7;      // matrix-log-conditioned quantities
  double fixed_point = 1e-8;  // fixed-point residuals, absolute
  double spohn = 1e-8;        // entropy reconstruction, absolute
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  uint64_t model_fingerprint = 0;
  uint64_t seed = 0;

  bool all_pass() const;
  int failures() const;
  const AuditCheck* find(const std::string& name) const;
};

/// Runs every identity and inequality of both frameworks against the
/// steady state of the model. Solver failures become failed checks.
AuditReport audit_model(const ModelSpec& model, const TolProfile& tol = {},
                        const SteadyStateOptions& solver = {});

/// Closed-form steady-state quantities of the driven empty cavity.
struct EmptyCavityAnalytic {
  Complex a_mean{0.0, 0.0};
  double P_conv = 0.0;
  double J_c_conv = 0.0;
  double Sigma_conv = 0.0;
};

EmptyCavityAnalytic analytic_empty_cavity(double kappa, Complex f, double delta,
                                          double n_c, double omega_d);

struct FuzzRanges {
  double n_c_min = 0.05, n_c_max = 0.6;
  double f_min = 0.0, f_max = 0.3;
  double delta_min = -1.5, delta_max = 1.5;
  double kerr_min = 0.0, kerr_max = 0.1;
  double g_min = 0.05, g_max = 0.15;
  double gamma_min = 0.02, gamma_max = 0.1;
  Index n_max_cavity = 30;
  Index n_max_tls = 16;
  bool include_tls = true;
};

/// Deterministic randomized model audits; every report must pass.
std::vector<AuditReport> fuzz(uint64_t seed, int count,
                              const FuzzRanges& ranges = {},
                              const TolProfile& tol = {});

/// Draws one fuzz model (exposed for the CLI and tests).
ModelSpec fuzz_model(uint64_t seed, int index, const FuzzRanges& ranges = {});

std::string format_report(const AuditReport& report);

}  // namespace cavthermo
