#include "cavthermo/audit.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cavthermo/evolve.hpp"
#include "cavthermo/operators.hpp"

namespace cavthermo {

namespace {

using Status = AuditCheck::Status;

constexpr double kInf = std::numeric_limits<double>::infinity();

AuditCheck make_check(std::string name, std::string anchor, double residual,
                      double tolerance) {
  AuditCheck c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.residual = residual;
  c.tolerance = tolerance;
  c.status = (std::isfinite(residual) && residual <= tolerance) ? Status::Pass
                                                                : Status::Fail;
  return c;
}

AuditCheck skip_check(std::string name, std::string anchor, std::string why) {
  AuditCheck c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.status = Status::Skipped;
  c.detail = std::move(why);
  return c;
}

/// Gibbs state of H'_TD at the channel temperature; T = 0 falls back to the
/// (possibly degenerate) ground-space projector.
DensityMatrix intra_gibbs(const ModelSpec& model, double temperature) {
  const Operator h = build_thermo_hamiltonian_intra(model);
  if (temperature > 0) return gibbs_state(h, temperature);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const RealVector& e = solver.eigenvalues();
  const double e0 = e.minCoeff();
  RealVector w = RealVector::Zero(e.size());
  for (Index i = 0; i < e.size(); ++i) {
    if (e(i) <= e0 + 1e-12 * std::max(1.0, std::abs(e0))) w(i) = 1.0;
  }
  w /= w.sum();
  return DensityMatrix(solver.eigenvectors() * w.asDiagonal() *
                       solver.eigenvectors().adjoint());
}

/// Gibbs state of omega_d (a^dag - alpha*)(a - alpha) at T_c.
DensityMatrix shifted_gibbs(const ModelSpec& model, Complex alpha,
                            double temperature) {
  const Operator a = cavity_annihilation(model);
  const Operator b =
      a - alpha * Operator::Identity(model.dim(), model.dim());
  const Operator m = (b.adjoint() * b).eval();
  if (temperature > 0) {
    return gibbs_state(model.drive.omega_d * m, temperature);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  Matrix v0 = solver.eigenvectors().col(0);
  return DensityMatrix(v0 * v0.adjoint());
}

double channel_temperature(const BathChannel& ch) {
  return occupation_to_temperature(ch.occupation, ch.reference_frequency);
}

}  // namespace

bool AuditReport::all_pass() const { return failures() == 0; }

int AuditReport::failures() const {
  int n = 0;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) ++n;
  }
  return n;
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

EmptyCavityAnalytic analytic_empty_cavity(double kappa, Complex f, double delta,
                                          double n_c, double omega_d) {
  if (!(kappa > 0)) {
    throw InvalidDimensionError("analytic_empty_cavity: kappa must be > 0");
  }
  EmptyCavityAnalytic out;
  out.a_mean = -std::sqrt(kappa) * f / Complex(0.5 * kappa, delta);
  out.P_conv = kappa * kappa * omega_d * std::norm(f) /
               (delta * delta + 0.25 * kappa * kappa);
  out.J_c_conv = -out.P_conv;
  const double t_c = occupation_to_temperature(n_c, omega_d);
  if (t_c > 0) {
    out.Sigma_conv = out.P_conv / t_c;
  } else {
    out.Sigma_conv = out.P_conv > 0 ? kInf : 0.0;
  }
  return out;
}

AuditReport audit_model(const ModelSpec& model, const TolProfile& tol,
                        const SteadyStateOptions& solver_options) {
  AuditReport report;
  report.model_fingerprint = model.fingerprint();

  Liouvillian liouvillian;
  DensityMatrix rho = DensityMatrix::vacuum(2);
  try {
    liouvillian = assemble(model);
    rho = steady_state(liouvillian, solver_options);
  } catch (const Error& e) {
    AuditCheck c;
    c.name = "steady_state_contract";
    c.anchor = "GKSL fixed point (Eq. 4)";
    c.status = Status::Fail;
    c.detail = e.what();
    c.tolerance = solver_options.tol;
    c.residual = kInf;
    report.checks.push_back(c);
    return report;
  }

  const ModelSpec& m = liouvillian.model;
  const double omega_d = m.drive.omega_d;
  const double kappa_drive = m.drive_channel().rate;
  const double energy_scale = omega_d * kappa_drive;

  report.checks.push_back(make_check(
      "steady_state_contract", "GKSL fixed point (Eq. 4)",
      steady_state_residual(liouvillian, rho), solver_options.tol));

  // Trace-form routes carry exact truncation corners; any disagreement
  // raises InternalConsistencyError inside the thermo calls.
  ThermoReport thermo;
  try {
    thermo = thermo_report(liouvillian, rho);
    report.checks.push_back(make_check(
        "internal_consistency_routes",
        "dual power/heat routes (Eqs. 10-13, 16-21)", 0.0, tol.strict_rel));
  } catch (const InternalConsistencyError& e) {
    AuditCheck c;
    c.name = "internal_consistency_routes";
    c.anchor = "dual power/heat routes (Eqs. 10-13, 16-21)";
    c.status = Status::Fail;
    c.detail = e.what();
    report.checks.push_back(c);
    return report;
  }

  // First law identity P + J_c = P_io + J_c_io.
  {
    const double lhs = thermo.P_conv + thermo.J_c_conv;
    const double rhs = thermo.P_io + thermo.J_c_io;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), energy_scale});
    report.checks.push_back(make_check("first_law_identity",
                                       "P + J_c = P_io + J_c_io (Suppl. III)",
                                       std::abs(lhs - rhs),
                                       tol.strict_rel * scale));
  }

  // Steady state first law: total energy flow vanishes.
  {
    const double total = thermo.P_conv + thermo.J_total();
    double scale = std::max(
        {std::abs(thermo.P_conv), std::abs(thermo.J_c_conv), energy_scale});
    for (const auto& [label, j] : thermo.J_intra) {
      scale = std::max(scale, std::abs(j));
    }
    report.checks.push_back(make_check("steady_state_first_law",
                                       "dU/dt = P + J = 0 (Eq. 7)",
                                       std::abs(total), 1e-8 * scale));
  }

  // Heat decomposition conditions.
  {
    const Operator h_td_intra = build_thermo_hamiltonian_intra(m);
    const Operator n_op = cavity_number(m);
    const Operator a_op = cavity_annihilation(m);
    double worst_cavity = 0.0;
    double worst_number = 0.0;
    double worst_amean = 0.0;
    for (std::size_t i = 0; i < m.channels.size(); ++i) {
      const Operator action = liouvillian.channel_parts[i].apply(rho.matrix());
      if (m.channels[i].kind == ChannelKind::Intra) {
        worst_number =
            std::max(worst_number, std::abs(expectation(n_op, action)));
        worst_amean =
            std::max(worst_amean, std::abs(expectation(a_op, action)));
      } else {
        worst_cavity = std::max(worst_cavity,
                                std::abs(expectation(h_td_intra, action)));
      }
    }
    report.checks.push_back(make_check(
        "heat_decomposition_cavity", "Tr{H'_TD L_c rho} = 0 (Suppl. II)",
        worst_cavity, 1e-10 * std::max(1.0, energy_scale)));
    report.checks.push_back(make_check(
        "heat_decomposition_intra_number",
        "Tr{a^dag a L' rho} = 0 (Suppl. II/V)", worst_number, 1e-10));
    report.checks.push_back(make_check("heat_decomposition_intra_amean",
                                       "Tr{a L' rho} = 0 (Suppl. V)",
                                       worst_amean, 1e-10));
  }

  // Fixed points of every channel dissipator (Eq. 15 and Suppl. V).
  std::vector<DensityMatrix> channel_sigmas;
  std::vector<double> channel_temps;
  {
    double worst_cavity = 0.0;
    double worst_intra = 0.0;
    for (std::size_t i = 0; i < m.channels.size(); ++i) {
      const BathChannel& ch = m.channels[i];
      const double t = channel_temperature(ch);
      channel_temps.push_back(t);
      if (ch.kind == ChannelKind::Intra) {
        DensityMatrix sigma = intra_gibbs(m, t);
        worst_intra = std::max(
            worst_intra,
            max_abs(liouvillian.channel_parts[i].apply(sigma.matrix())));
        channel_sigmas.push_back(std::move(sigma));
      } else {
        DensityMatrix sigma = thermal_cavity_state(m, ch.occupation);
        worst_cavity = std::max(
            worst_cavity,
            max_abs(liouvillian.channel_parts[i].apply(sigma.matrix())));
        channel_sigmas.push_back(std::move(sigma));
      }
    }
    report.checks.push_back(make_check("fixed_point_cavity_gibbs",
                                       "L_c exp(-omega_d n/T_c) = 0 (Eq. 15)",
                                       worst_cavity, tol.fixed_point));
    report.checks.push_back(make_check("fixed_point_intra_gibbs",
                                       "L' exp(-H'_TD/T') = 0 (Eq. 15)",
                                       worst_intra, tol.fixed_point));
  }

  // Shifted rewriting: fixed point of L_s and invariance of the generator.
  const ShiftedForm shifted = shifted_form(liouvillian, rho);
  {
    const DensityMatrix sigma_s = shifted_gibbs(
        m, shifted.alpha,
        channel_temperature(m.drive_channel()));
    // The displaced Gibbs state is an exact fixed point only in the
    // untruncated space; its residual floor is set by its own tail weight.
    const double sigma_top = top_fock_population(m, sigma_s);
    double floor = 0.0;
    for (const auto& [idx, part] : shifted.shifted_parts) {
      const BathChannel& ch = m.channels[idx];
      floor += 100.0 * ch.rate * (ch.occupation + 1.0) *
               static_cast<double>(m.n_max) * sigma_top;
    }
    if (floor > tol.fixed_point) {
      report.checks.push_back(skip_check(
          "fixed_point_shifted", "L_s sigma_s = 0 (Suppl. IV.B)",
          "truncation floor " + std::to_string(floor) +
              " exceeds tolerance; rerun at larger n_max"));
    } else {
      double worst = 0.0;
      for (const auto& [idx, part] : shifted.shifted_parts) {
        worst = std::max(worst, max_abs(part.apply(sigma_s.matrix())));
      }
      report.checks.push_back(make_check("fixed_point_shifted",
                                         "L_s sigma_s = 0 (Suppl. IV.B)",
                                         worst, tol.fixed_point));
    }
  }
  {
    const double defect = shift_action_defect(liouvillian, shifted);
    double coeff_scale = 1.0;
    for (int k = 0; k < liouvillian.total.matrix().outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(liouvillian.total.matrix(), k); it;
           ++it) {
        coeff_scale = std::max(coeff_scale, std::abs(it.value()));
      }
    }
    report.checks.push_back(
        make_check("shift_action_identity",
                   "shifted rewriting leaves the master equation invariant "
                   "(Eqs. 18-21)",
                   defect, 1e-10 * coeff_scale));
  }

  // Spohn contributions and entropy reconstruction.
  bool sentinel =
      !std::isfinite(thermo.Sigma_conv) || !std::isfinite(thermo.Sigma_io);
  for (double t : channel_temps) {
    if (t == 0.0) sentinel = true;  // no finite J/T decomposition exists
  }
  if (sentinel) {
    report.checks.push_back(skip_check(
        "spohn_nonnegative", "Spohn inequality per channel (Suppl. IV)",
        "zero-temperature sentinel"));
    report.checks.push_back(skip_check(
        "spohn_sum_conv", "Spohn sum equals Sigma_conv (Suppl. IV)",
        "zero-temperature sentinel"));
    report.checks.push_back(skip_check(
        "spohn_sum_io", "Spohn sum equals Sigma_io (Suppl. IV)",
        "zero-temperature sentinel"));
  } else {
    const double dS_tr =
        entropy_rate(rho, liouvillian.total.apply(rho.matrix()));
    double spohn_conv = 0.0;
    double spohn_io = 0.0;
    double worst_negative = 0.0;
    double sigma_conv_tr = dS_tr;
    double sigma_io_tr = dS_tr;
    const Operator n_td = omega_d * cavity_number(m);
    const Operator h_td_intra = build_thermo_hamiltonian_intra(m);

    for (std::size_t i = 0; i < m.channels.size(); ++i) {
      const BathChannel& ch = m.channels[i];
      const double t = channel_temps[i];
      if (ch.kind == ChannelKind::CavityAccessible) continue;
      const double s =
          spohn_contribution(liouvillian.channel_parts[i], rho,
                             channel_sigmas[i]);
      spohn_conv += s;
      spohn_io += s;
      worst_negative = std::min(worst_negative, s);
      const Operator action = liouvillian.channel_parts[i].apply(rho.matrix());
      const Operator& weight =
          ch.kind == ChannelKind::Intra ? h_td_intra : n_td;
      const double j_tr = expectation(weight, action).real();
      sigma_conv_tr -= j_tr / t;
      sigma_io_tr -= j_tr / t;
    }
    const Operator a_full = cavity_annihilation(m);
    const Operator id = Operator::Identity(m.dim(), m.dim());
    const Operator b = a_full - shifted.alpha * id;
    const Operator m_shift = omega_d * (b.adjoint() * b).eval();
    for (const auto& [idx, part] : shifted.shifted_parts) {
      const BathChannel& ch = m.channels[idx];
      const double t = channel_temps[idx];
      const DensityMatrix sigma_s = shifted_gibbs(m, shifted.alpha, t);
      const double s_io = spohn_contribution(part, rho, sigma_s);
      spohn_io += s_io;
      worst_negative = std::min(worst_negative, s_io);
      const double s_conv =
          spohn_contribution(liouvillian.channel_parts[idx], rho,
                             channel_sigmas[idx]);
      spohn_conv += s_conv;
      worst_negative = std::min(worst_negative, s_conv);
      sigma_conv_tr -=
          expectation(n_td, liouvillian.channel_parts[idx].apply(rho.matrix()))
              .real() /
          t;
      sigma_io_tr -= expectation(m_shift, part.apply(rho.matrix())).real() / t;
    }
    report.checks.push_back(
        make_check("spohn_nonnegative",
                   "Spohn inequality per channel (Suppl. IV)",
                   std::max(0.0, -worst_negative), 1e-9));
    report.checks.push_back(make_check(
        "spohn_sum_conv", "Spohn sum equals Sigma_conv (Suppl. IV)",
        std::abs(spohn_conv - sigma_conv_tr), tol.spohn));
    report.checks.push_back(make_check(
        "spohn_sum_io", "Spohn sum equals Sigma_io (Suppl. IV)",
        std::abs(spohn_io - sigma_io_tr), tol.spohn));
  }

  // Second-law ordering and the gap identity.
  {
    const bool ordering_ok =
        thermo.Sigma_conv >= thermo.Sigma_io - 1e-9 &&
        thermo.Sigma_io >= -1e-9;
    AuditCheck c;
    c.name = "sigma_ordering";
    c.anchor = "Sigma_conv >= Sigma_io >= 0 (Eq. 23)";
    c.status = ordering_ok ? Status::Pass : Status::Fail;
    c.tolerance = 1e-9;
    c.residual = ordering_ok ? 0.0 : kInf;
    if (!std::isfinite(thermo.Sigma_io)) {
      c.detail = "zero-temperature sentinel";
    }
    report.checks.push_back(c);
  }
  {
    if (sentinel) {
      report.checks.push_back(
          skip_check("sigma_gap_identity",
                     "Sigma_conv - Sigma_io = omega_d sum_j kappa_j/T_j |<a>|^2 "
                     "(Suppl. IV/V)",
                     "zero-temperature sentinel"));
    } else {
      double gap_expected = 0.0;
      for (std::size_t i = 0; i < m.channels.size(); ++i) {
        if (m.channels[i].kind != ChannelKind::CavityAccessible) continue;
        gap_expected += omega_d * m.channels[i].rate *
                        std::norm(thermo.a_mean) / channel_temps[i];
      }
      const double gap = thermo.Sigma_conv - thermo.Sigma_io;
      const double scale =
          std::max({std::abs(gap), std::abs(gap_expected), 1e-6});
      report.checks.push_back(
          make_check("sigma_gap_identity",
                     "Sigma_conv - Sigma_io = omega_d sum_j kappa_j/T_j |<a>|^2 "
                     "(Suppl. IV/V)",
                     std::abs(gap - gap_expected), tol.strict_rel * scale));
    }
  }
  {
    if (std::norm(thermo.a_mean) <= 1e-12 || sentinel) {
      report.checks.push_back(skip_check(
          "sigma_strictness", "strictly tighter second law (Eq. 23)",
          "|<a>|^2 too small for a strict gap"));
    } else {
      AuditCheck c;
      c.name = "sigma_strictness";
      c.anchor = "strictly tighter second law (Eq. 23)";
      const bool strict = thermo.Sigma_conv > thermo.Sigma_io;
      c.status = strict ? Status::Pass : Status::Fail;
      c.residual = strict ? 0.0 : kInf;
      report.checks.push_back(c);
    }
  }

  // Truncation adequacy.
  try {
    const TruncationReport trunc = truncation_report(rho, m);
    report.checks.push_back(make_check("truncation_tail",
                                       "Fock truncation adequacy",
                                       trunc.cavity_tail_mass, 1e-3));
  } catch (const TruncationError& e) {
    AuditCheck c;
    c.name = "truncation_tail";
    c.anchor = "Fock truncation adequacy";
    c.status = Status::Fail;
    c.detail = e.what();
    report.checks.push_back(c);
  }

  // Closed-form oracle for empty-cavity models.
  if (std::holds_alternative<IntraNone>(m.intra) && m.channels.size() == 1) {
    const BathChannel& ch = m.drive_channel();
    const EmptyCavityAnalytic analytic = analytic_empty_cavity(
        ch.rate, m.drive.amplitude, m.delta(), ch.occupation, omega_d);
    const double p_top = top_fock_population(m, rho);
    const double alpha_tol =
        std::max(1e-8, 10.0 * static_cast<double>(m.n_max) * p_top);
    report.checks.push_back(make_check(
        "empty_cavity_alpha",
        "reflected-drive fixed point (Empty Cavity section)",
        std::abs(thermo.a_mean - analytic.a_mean), alpha_tol));
  }

  return report;
}

ModelSpec fuzz_model(uint64_t seed, int index, const FuzzRanges& ranges) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (index + 1));
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
  };
  const int n_families = ranges.include_tls ? 3 : 2;
  const int family = static_cast<int>(rng() % n_families);

  PresetOverrides ov;
  ov.delta = uniform(ranges.delta_min, ranges.delta_max);
  ov.drive_amplitude = uniform(ranges.f_min, ranges.f_max);
  ov.n_c = uniform(ranges.n_c_min, ranges.n_c_max);

  ModelSpec model;
  if (family == 0) {
    ov.n_max = ranges.n_max_cavity;
    model = preset(Preset::Empty, ov);
  } else if (family == 1) {
    ov.n_max = ranges.n_max_cavity;
    model = preset(Preset::Kerr, ov);
    std::get<IntraKerr>(model.intra).kerr_shift =
        uniform(ranges.kerr_min, ranges.kerr_max);
  } else {
    ov.n_max = ranges.n_max_tls;
    model = preset(Preset::Tls, ov);
    std::get<IntraTls>(model.intra).coupling =
        uniform(ranges.g_min, ranges.g_max);
    for (auto& ch : model.channels) {
      if (ch.kind == ChannelKind::Intra) {
        ch.rate = uniform(ranges.gamma_min, ranges.gamma_max);
      }
    }
  }
  return model;
}

std::vector<AuditReport> fuzz(uint64_t seed, int count,
                              const FuzzRanges& ranges, const TolProfile& tol) {
  std::vector<AuditReport> reports;
  reports.reserve(count);
  for (int i = 0; i < count; ++i) {
    AuditReport r = audit_model(fuzz_model(seed, i, ranges), tol);
    r.seed = seed;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string format_report(const AuditReport& report) {
  std::ostringstream os;
  os << "model fingerprint " << std::hex << report.model_fingerprint
     << std::dec << "\n";
  for (const auto& c : report.checks) {
    const char* status = c.status == Status::Pass     ? "pass"
                         : c.status == Status::Fail   ? "FAIL"
                                                      : "skip";
    os << "  [" << status << "] " << c.name;
    if (c.status != Status::Skipped) {
      os << "  residual " << c.residual << " (tol " << c.tolerance << ")";
    }
    if (!c.detail.empty()) os << "  -- " << c.detail;
    os << "\n      anchor: " << c.anchor << "\n";
  }
  return os.str();
}

}  // namespace cavthermo
