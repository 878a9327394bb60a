#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cavthermo/liouvillian.hpp"

namespace cavthermo {

/// All thermodynamic quantities of both bookkeepings for one state.
/// Powers and heats carry the formula values (Eqs. of the closed forms);
/// the trace-form routes are asserted against them internally.
struct ThermoReport {
  double U = 0.0;         // <H_TD>
  double P_conv = 0.0;    // conventional power
  double J_c_conv = 0.0;  // cavity heat, summed over accessible channels
  std::vector<std::pair<std::string, double>> J_intra;  // J', J_H, J_C, J_k
  double P_io = 0.0;
  double J_c_io = 0.0;
  double dS_dt = 0.0;
  double Sigma_conv = 0.0;
  double Sigma_io = 0.0;
  Complex b_out_coherent{0.0, 0.0};
  Complex a_mean{0.0, 0.0};
  double n_mean = 0.0;
  double n_var_connected = 0.0;  // <<a^dag a>>

  double J_total() const;
};

double internal_energy(const Liouvillian& l, const DensityMatrix& rho);

/// Eq.-(13)-style formula, cross-checked against -i<[H_TD, H_d]>.
double conventional_power(const Liouvillian& l, const DensityMatrix& rho);

/// omega_d sum_j kappa_j (n_j - <n>) over accessible channels, cross-checked
/// against Tr{omega_d n L_c rho} including the exact truncation corner.
double conventional_heat_cavity(const Liouvillian& l, const DensityMatrix& rho);

/// Heat per non-accessible channel: Tr{H'_TD L' rho} for intra channels
/// (TLS closed form asserted), omega_d gamma_k (n_k - <n>) for inaccessible
/// photon channels.
std::vector<std::pair<std::string, double>> intra_heat(const Liouvillian& l,
                                                       const DensityMatrix& rho);

/// -omega_d sum_j (|<b_out,j>|^2 - |<b_in,j>|^2); cross-checked against
/// -i<[H_TD, H_s]>.
double io_power(const Liouvillian& l, const DensityMatrix& rho);

/// omega_d sum_j kappa_j (n_j - <<n>>); cross-checked against
/// Tr{omega_d n L_s rho} including the exact truncation corner.
double io_heat(const Liouvillian& l, const DensityMatrix& rho,
               const ShiftedForm* shifted = nullptr);

struct OutputField {
  Complex b_out_coherent{0.0, 0.0};
  double flux_delta_coherent = 0.0;  // |<b_out>|^2 - |<b_in>|^2
  double noise_flux_delta = 0.0;     // kappa (<<n>> - n_c)
};

OutputField output_field(const Liouvillian& l, const DensityMatrix& rho);

/// (Sigma_conv, Sigma_io). Channels at T = 0 contribute via the limit:
/// zero heat -> 0, nonzero heat -> +/- infinity sentinel.
std::pair<double, double> entropy_production(const Liouvillian& l,
                                             const DensityMatrix& rho,
                                             double dS_dt = 0.0);

/// -Tr{L_part rho (ln rho - ln sigma)}; sigma must satisfy L_part sigma = 0.
double spohn_contribution(const SuperOperator& part, const DensityMatrix& rho,
                          const DensityMatrix& sigma_fixed);

ThermoReport thermo_report(const Liouvillian& l, const DensityMatrix& rho,
                           double dS_dt = 0.0);

/// Top Fock level population (summed over intra levels); the exact
/// truncation corner of the trace-form heat routes is
/// omega_d sum_j kappa_j n_j n_max p_top.
double top_fock_population(const ModelSpec& model, const DensityMatrix& rho);

}  // namespace cavthermo
