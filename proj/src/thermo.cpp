#include "cavthermo/thermo.hpp"

#include <cmath>
#include <limits>

#include "cavthermo/operators.hpp"

namespace cavthermo {

namespace {

constexpr double kRouteRelTol = 1e-9;
constexpr double kClosedFormRelTol = 1e-10;

struct Moments {
  Complex a_mean;
  double n_mean;
  double n_connected;
  double p_top;
};

Moments moments(const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  Moments out;
  out.a_mean = expectation(cavity_annihilation(m), rho.matrix());
  out.n_mean = expectation(cavity_number(m), rho.matrix()).real();
  out.n_connected = out.n_mean - std::norm(out.a_mean);
  out.p_top = top_fock_population(m, rho);
  return out;
}

void assert_routes_agree(const std::string& what, double a, double b,
                         double scale, double rel_tol = kRouteRelTol) {
  if (std::abs(a - b) > rel_tol * scale) {
    throw InternalConsistencyError(
        what + ": routes disagree, " + std::to_string(a) + " vs " +
        std::to_string(b) + " (tolerance " + std::to_string(rel_tol * scale) +
        ")");
  }
}

double heat_scale(const ModelSpec& m, double value) {
  return std::max({std::abs(value), m.drive.omega_d * m.drive_channel().rate});
}

/// Entropy-flow term -J/T with the zero-temperature limit; |J| below
/// 1e-10 * omega_ref * rate counts as no heat.
double entropy_flow_term(double heat, double temperature,
                         const BathChannel& ch) {
  if (temperature > 0) return -heat / temperature;
  if (std::abs(heat) <= 1e-10 * ch.reference_frequency * ch.rate) return 0.0;
  return heat < 0 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
}

}  // namespace

double ThermoReport::J_total() const {
  double j = J_c_conv;
  for (const auto& [label, value] : J_intra) j += value;
  return j;
}

double top_fock_population(const ModelSpec& model, const DensityMatrix& rho) {
  const Index di = model.intra_dimension();
  const Index base = (model.n_max - 1) * di;
  double p = 0.0;
  for (Index j = 0; j < di; ++j) p += rho.matrix()(base + j, base + j).real();
  return std::max(0.0, p);
}

double internal_energy(const Liouvillian& l, const DensityMatrix& rho) {
  return expectation_real(build_thermo_hamiltonian(l.model), rho.matrix());
}

double conventional_power(const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Complex f = m.drive.amplitude;
  const double kappa = m.drive_channel().rate;
  const double formula = -2.0 * std::sqrt(kappa) * m.drive.omega_d *
                         std::real(std::conj(f) * mo.a_mean);

  const Operator a = cavity_annihilation(m);
  const Operator h_drive =
      kI * std::sqrt(kappa) * (std::conj(f) * a - f * a.adjoint());
  const Operator h_td = build_thermo_hamiltonian(m);
  const double commutator_route =
      std::real(-kI * expectation(h_td * h_drive - h_drive * h_td, rho.matrix()));
  assert_routes_agree("conventional_power", formula, commutator_route,
                      heat_scale(m, formula));
  return formula;
}

double conventional_heat_cavity(const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Operator n_op = m.drive.omega_d * cavity_number(m);

  double formula = 0.0;
  double trace_route = 0.0;
  double corner = 0.0;
  for (std::size_t i = 0; i < m.channels.size(); ++i) {
    const BathChannel& ch = m.channels[i];
    if (ch.kind != ChannelKind::CavityAccessible) continue;
    formula += m.drive.omega_d * ch.rate * (ch.occupation - mo.n_mean);
    trace_route += expectation(n_op, l.channel_parts[i].apply(rho.matrix())).real();
    // exact top-of-ladder defect of the truncated dissipator adjoint
    corner += m.drive.omega_d * ch.rate * ch.occupation *
              static_cast<double>(m.n_max) * mo.p_top;
  }
  assert_routes_agree("conventional_heat_cavity", trace_route, formula - corner,
                      heat_scale(m, formula));
  return formula;
}

std::vector<std::pair<std::string, double>> intra_heat(
    const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Operator h_td_intra = build_thermo_hamiltonian_intra(m);
  const Operator n_op = m.drive.omega_d * cavity_number(m);

  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < m.channels.size(); ++i) {
    const BathChannel& ch = m.channels[i];
    if (ch.kind == ChannelKind::CavityAccessible) continue;
    double value = 0.0;
    if (ch.kind == ChannelKind::Intra) {
      const Operator action = l.channel_parts[i].apply(rho.matrix());
      value = expectation(h_td_intra, action).real();
      if (std::holds_alternative<IntraTls>(m.intra)) {
        // J' = omega_d gamma (n_q/n_F)(n_F - <sigma_+ sigma_->)
        const double t_q =
            occupation_to_temperature(ch.occupation, ch.reference_frequency);
        const double n_f =
            t_q > 0 ? 1.0 / (std::exp(ch.reference_frequency / t_q) + 1.0) : 0.0;
        const double p_e =
            expectation(intra_projector(m, 2, 2), rho.matrix()).real();
        if (t_q > 0) {
          const double closed =
              m.drive.omega_d * ch.rate * (2.0 * ch.occupation + 1.0) *
              (n_f - p_e);
          assert_routes_agree("intra_heat(tls closed form)", value, closed,
                              heat_scale(m, value), kClosedFormRelTol);
        }
      }
    } else {
      // inaccessible photon channel
      value = m.drive.omega_d * ch.rate * (ch.occupation - mo.n_mean);
      const double trace_route =
          expectation(n_op, l.channel_parts[i].apply(rho.matrix())).real();
      const double corner = m.drive.omega_d * ch.rate * ch.occupation *
                            static_cast<double>(m.n_max) * mo.p_top;
      assert_routes_agree("intra_heat(photon channel)", trace_route,
                          value - corner, heat_scale(m, value));
    }
    out.emplace_back(ch.label, value);
  }
  return out;
}

double io_power(const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Complex f = m.drive.amplitude;
  const BathChannel& driven = m.drive_channel();

  double formula = 0.0;
  for (const auto& ch : m.channels) {
    if (ch.kind != ChannelKind::CavityAccessible) continue;
    const Complex b_in = (&ch == &driven) ? f : Complex(0.0, 0.0);
    const Complex b_out = b_in + std::sqrt(ch.rate) * mo.a_mean;
    formula -= m.drive.omega_d * (std::norm(b_out) - std::norm(b_in));
  }

  const ShiftedForm shifted = shifted_form(l, rho);
  const Operator h_td = build_thermo_hamiltonian(m);
  const Operator& h_s = shifted.h_shifted;
  const double commutator_route =
      std::real(-kI * expectation(h_td * h_s - h_s * h_td, rho.matrix()));
  assert_routes_agree("io_power", formula, commutator_route,
                      heat_scale(m, formula));
  return formula;
}

double io_heat(const Liouvillian& l, const DensityMatrix& rho,
               const ShiftedForm* shifted) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Operator n_op = m.drive.omega_d * cavity_number(m);

  ShiftedForm local;
  if (!shifted) {
    local = shifted_form(l, rho);
    shifted = &local;
  }
  double formula = 0.0;
  double trace_route = 0.0;
  double corner = 0.0;
  for (const auto& [idx, part] : shifted->shifted_parts) {
    const BathChannel& ch = m.channels[idx];
    formula += m.drive.omega_d * ch.rate * (ch.occupation - mo.n_connected);
    trace_route += expectation(n_op, part.apply(rho.matrix())).real();
    corner += m.drive.omega_d * ch.rate * ch.occupation *
              static_cast<double>(m.n_max) * mo.p_top;
  }
  assert_routes_agree("io_heat", trace_route, formula - corner,
                      heat_scale(m, formula));
  return formula;
}

OutputField output_field(const Liouvillian& l, const DensityMatrix& rho) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Complex f = m.drive.amplitude;
  const BathChannel& driven = m.drive_channel();

  OutputField out;
  out.b_out_coherent = f + std::sqrt(driven.rate) * mo.a_mean;
  double flux_coherent = 0.0;
  double flux_noise = 0.0;
  for (const auto& ch : m.channels) {
    if (ch.kind != ChannelKind::CavityAccessible) continue;
    const Complex b_in = (&ch == &driven) ? f : Complex(0.0, 0.0);
    const Complex b_out = b_in + std::sqrt(ch.rate) * mo.a_mean;
    flux_coherent += std::norm(b_out) - std::norm(b_in);
    flux_noise += ch.rate * (mo.n_connected - ch.occupation);
  }
  out.flux_delta_coherent = flux_coherent;
  out.noise_flux_delta = flux_noise;

  // Energy balance with the cavity environment: the net outgoing field flux
  // times omega_d equals -(P + J_c).
  const double p = conventional_power(l, rho);
  const double j_c = conventional_heat_cavity(l, rho);
  const double lhs = m.drive.omega_d * (flux_coherent + flux_noise);
  assert_routes_agree("output_field(energy balance)", lhs, -(p + j_c),
                      heat_scale(m, p + j_c));
  return out;
}

std::pair<double, double> entropy_production(const Liouvillian& l,
                                             const DensityMatrix& rho,
                                             double dS_dt) {
  const ModelSpec& m = l.model;
  const Moments mo = moments(l, rho);
  const Operator h_td_intra = build_thermo_hamiltonian_intra(m);

  double sigma_conv = dS_dt;
  double sigma_io = dS_dt;
  for (std::size_t i = 0; i < m.channels.size(); ++i) {
    const BathChannel& ch = m.channels[i];
    const double temperature =
        occupation_to_temperature(ch.occupation, ch.reference_frequency);
    double heat_conv = 0.0;
    double heat_io = 0.0;
    switch (ch.kind) {
      case ChannelKind::CavityAccessible:
        heat_conv = m.drive.omega_d * ch.rate * (ch.occupation - mo.n_mean);
        heat_io = m.drive.omega_d * ch.rate * (ch.occupation - mo.n_connected);
        break;
      case ChannelKind::CavityInaccessible:
        heat_conv = m.drive.omega_d * ch.rate * (ch.occupation - mo.n_mean);
        heat_io = heat_conv;
        break;
      case ChannelKind::Intra:
        heat_conv = expectation(h_td_intra,
                                l.channel_parts[i].apply(rho.matrix()))
                        .real();
        heat_io = heat_conv;
        break;
    }
    sigma_conv += entropy_flow_term(heat_conv, temperature, ch);
    sigma_io += entropy_flow_term(heat_io, temperature, ch);
  }
  return {sigma_conv, sigma_io};
}

double spohn_contribution(const SuperOperator& part, const DensityMatrix& rho,
                          const DensityMatrix& sigma_fixed) {
  if (part.dim() != rho.dim() || sigma_fixed.dim() != rho.dim()) {
    throw DimensionMismatchError("spohn_contribution: dimension mismatch");
  }
  const double fixed_residual = max_abs(part.apply(sigma_fixed.matrix()));
  if (fixed_residual > 1e-8) {
    throw PreconditionError(
        "spohn_contribution: sigma is not a fixed point of the part "
        "(residual " +
        std::to_string(fixed_residual) + ")");
  }
  // sigma is an analytic Gibbs state: its log needs no regularization floor.
  const Operator log_rho = matrix_log(rho);
  const Operator log_sigma = matrix_log(sigma_fixed, 1e-300);
  const Operator action = part.apply(rho.matrix());
  return -expectation(log_rho - log_sigma, action).real();
}

ThermoReport thermo_report(const Liouvillian& l, const DensityMatrix& rho,
                           double dS_dt) {
  ThermoReport r;
  const Moments mo = moments(l, rho);
  r.a_mean = mo.a_mean;
  r.n_mean = mo.n_mean;
  r.n_var_connected = mo.n_connected;
  r.U = internal_energy(l, rho);
  r.P_conv = conventional_power(l, rho);
  r.J_c_conv = conventional_heat_cavity(l, rho);
  r.J_intra = intra_heat(l, rho);
  const ShiftedForm shifted = shifted_form(l, rho);
  r.P_io = io_power(l, rho);
  r.J_c_io = io_heat(l, rho, &shifted);
  r.b_out_coherent = output_field(l, rho).b_out_coherent;
  r.dS_dt = dS_dt;
  std::tie(r.Sigma_conv, r.Sigma_io) = entropy_production(l, rho, dS_dt);
  return r;
}

}  // namespace cavthermo
