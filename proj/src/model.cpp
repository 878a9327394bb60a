#include "cavthermo/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "cavthermo/operators.hpp"

namespace cavthermo {

namespace {

constexpr double kOmegaOverKappa = 1.0e4;  // Omega/kappa for all presets
constexpr double kTailWarnThreshold = 1e-6;

Operator tls_sigma_minus() {
  Operator s = Operator::Zero(2, 2);
  s(0, 1) = 1.0;  // |g><e|, basis (g, e)
  return s;
}

Operator maser_ketbra(int i, int j) {
  Operator m = Operator::Zero(3, 3);
  m(i - 1, j - 1) = 1.0;  // levels |1>, |2>, |3>
  return m;
}

void fnv_mix(uint64_t& h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
}

void fnv_mix_double(uint64_t& h, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  fnv_mix(h, buf, std::strlen(buf));
}

}  // namespace

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::CavityAccessible: return "cavity-accessible";
    case ChannelKind::CavityInaccessible: return "cavity-inaccessible";
    case ChannelKind::Intra: return "intra";
  }
  return "?";
}

ChannelKind channel_kind_from_string(const std::string& s) {
  if (s == "cavity-accessible") return ChannelKind::CavityAccessible;
  if (s == "cavity-inaccessible") return ChannelKind::CavityInaccessible;
  if (s == "intra") return ChannelKind::Intra;
  throw ConfigError("unknown channel kind '" + s + "'");
}

Index intra_dim(const IntraSystem& intra) {
  return std::visit(
      [](const auto& v) -> Index {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntraTls>) return 2;
        if constexpr (std::is_same_v<T, IntraMaser>) return 3;
        return 1;
      },
      intra);
}

std::string intra_name(const IntraSystem& intra) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntraKerr>) return "kerr";
        if constexpr (std::is_same_v<T, IntraTls>) return "tls";
        if constexpr (std::is_same_v<T, IntraMaser>) return "maser";
        return "none";
      },
      intra);
}

const BathChannel* ModelSpec::find_channel(const std::string& label) const {
  for (const auto& ch : channels) {
    if (ch.label == label) return &ch;
  }
  return nullptr;
}

const BathChannel& ModelSpec::drive_channel() const {
  for (const auto& ch : channels) {
    if (ch.kind == ChannelKind::CavityAccessible) return ch;
  }
  throw InvalidDimensionError("ModelSpec: no cavity-accessible channel");
}

std::vector<std::string> ModelSpec::validate() const {
  std::vector<std::string> warnings;
  if (n_max < 2) throw InvalidDimensionError("ModelSpec: n_max must be >= 2");
  if (!(omega_cavity > 0) || !std::isfinite(omega_cavity)) {
    throw InvalidHamiltonianError("ModelSpec: omega_cavity must be positive");
  }
  if (!(drive.omega_d > 0) || !std::isfinite(drive.omega_d)) {
    throw InvalidHamiltonianError("ModelSpec: omega_d must be positive");
  }
  if (!std::isfinite(drive.amplitude.real()) ||
      !std::isfinite(drive.amplitude.imag())) {
    throw InvalidHamiltonianError("ModelSpec: drive amplitude must be finite");
  }
  if (const auto* m = std::get_if<IntraMaser>(&intra)) {
    if (!(m->omega_3 > m->omega_2)) {
      throw InvalidHamiltonianError("ModelSpec: maser requires omega_3 > omega_2");
    }
  }
  bool any_accessible = false;
  const Index d = dim();
  const Operator a = cavity_annihilation(*this);
  for (const auto& ch : channels) {
    if (!(ch.rate > 0)) {
      throw InvalidDimensionError("channel '" + ch.label + "': rate must be > 0");
    }
    if (ch.occupation < 0) {
      throw InvalidDimensionError("channel '" + ch.label +
                                  "': occupation must be >= 0");
    }
    if (!(ch.reference_frequency > 0)) {
      throw InvalidDimensionError("channel '" + ch.label +
                                  "': reference frequency must be > 0");
    }
    if (ch.jumps.empty()) {
      throw InvalidDimensionError("channel '" + ch.label + "': no jump operators");
    }
    for (const auto& jp : ch.jumps) {
      if (jp.lowering.rows() != d || jp.lowering.cols() != d ||
          jp.raising.rows() != d || jp.raising.cols() != d) {
        throw DimensionMismatchError("channel '" + ch.label +
                                     "': jump dimension does not match model");
      }
      if (ch.kind == ChannelKind::Intra) {
        const double scale = std::max(1.0, max_abs(jp.lowering));
        if (max_abs(jp.lowering * a - a * jp.lowering) > 1e-10 * scale ||
            max_abs(jp.lowering * a.adjoint() - a.adjoint() * jp.lowering) >
                1e-10 * scale) {
          throw InvalidDimensionError(
              "channel '" + ch.label +
              "': intra jump does not commute with the cavity mode");
        }
      }
    }
    if (ch.kind == ChannelKind::CavityAccessible) any_accessible = true;
    if (ch.kind != ChannelKind::Intra && ch.occupation > 0) {
      const double q = ch.occupation / (ch.occupation + 1.0);
      const double tail = std::pow(q, static_cast<double>(n_max));
      if (tail > kTailWarnThreshold) {
        warnings.push_back("channel '" + ch.label + "': thermal tail " +
                           std::to_string(tail) + " exceeds 1e-6 at n_max " +
                           std::to_string(n_max));
      }
    }
  }
  if (!any_accessible) {
    throw InvalidDimensionError("ModelSpec: at least one cavity-accessible "
                                "channel is required");
  }
  if (std::abs(delta()) > 0.1 * drive.omega_d) {
    warnings.push_back("detuning |Delta| exceeds 0.1 omega_d; rotating-frame "
                       "treatment is questionable");
  }
  return warnings;
}

uint64_t ModelSpec::fingerprint() const {
  uint64_t h = 1469598103934665603ull;
  fnv_mix_double(h, omega_cavity);
  fnv_mix_double(h, static_cast<double>(n_max));
  fnv_mix_double(h, drive.amplitude.real());
  fnv_mix_double(h, drive.amplitude.imag());
  fnv_mix_double(h, drive.omega_d);
  const std::string iname = intra_name(intra);
  fnv_mix(h, iname.data(), iname.size());
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntraKerr>) {
          fnv_mix_double(h, v.kerr_shift);
        } else if constexpr (std::is_same_v<T, IntraTls>) {
          fnv_mix_double(h, v.omega_q);
          fnv_mix_double(h, v.coupling);
        } else if constexpr (std::is_same_v<T, IntraMaser>) {
          fnv_mix_double(h, v.omega_2);
          fnv_mix_double(h, v.omega_3);
          fnv_mix_double(h, v.coupling);
        }
      },
      intra);
  for (const auto& ch : channels) {
    fnv_mix(h, ch.label.data(), ch.label.size());
    const std::string k = to_string(ch.kind);
    fnv_mix(h, k.data(), k.size());
    fnv_mix_double(h, ch.rate);
    fnv_mix_double(h, ch.occupation);
    fnv_mix_double(h, ch.reference_frequency);
  }
  return h;
}

Operator cavity_annihilation(const ModelSpec& model) {
  const Operator a = fock_annihilation(model.n_max);
  const Index di = model.intra_dimension();
  if (di == 1) return a;
  return kron(a, Operator::Identity(di, di));
}

Operator cavity_number(const ModelSpec& model) {
  const Operator n = fock_number(model.n_max);
  const Index di = model.intra_dimension();
  if (di == 1) return n;
  return kron(n, Operator::Identity(di, di));
}

Operator intra_projector(const ModelSpec& model, int i, int j) {
  const Index di = model.intra_dimension();
  if (i < 1 || j < 1 || i > di || j > di) {
    throw InvalidDimensionError("intra_projector: level out of range");
  }
  Operator p = Operator::Zero(di, di);
  p(i - 1, j - 1) = 1.0;
  return kron(Operator::Identity(model.n_max, model.n_max), p);
}

Operator build_hamiltonian_rotating(const ModelSpec& model) {
  model.validate();
  const double delta = model.delta();
  const double omega_d = model.drive.omega_d;
  const Complex f = model.drive.amplitude;
  const double kappa = model.drive_channel().rate;
  const Operator a = cavity_annihilation(model);
  const Operator ad = a.adjoint();

  Operator h = delta * (ad * a).eval();
  h += kI * std::sqrt(kappa) * (std::conj(f) * a - f * ad);

  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntraKerr>) {
          h += v.kerr_shift * (ad * ad * a * a).eval();
        } else if constexpr (std::is_same_v<T, IntraTls>) {
          const Index n = model.n_max;
          const Operator sm = kron(Operator::Identity(n, n), tls_sigma_minus());
          const Operator sp = sm.adjoint();
          const Operator sz = sp * sm - sm * sp;
          const double delta_q = v.omega_q - omega_d;
          h += 0.5 * delta_q * sz;
          h += v.coupling * (ad * sm + a * sp);
        } else if constexpr (std::is_same_v<T, IntraMaser>) {
          // Frame rotates a and |2><2| only; |3> keeps its bare energy.
          const Operator p22 = intra_projector(model, 2, 2);
          const Operator p33 = intra_projector(model, 3, 3);
          const Operator s21 = intra_projector(model, 2, 1);
          h += (v.omega_2 - omega_d) * p22 + v.omega_3 * p33;
          h += v.coupling * (a * s21 + (a * s21).adjoint());
        }
      },
      model.intra);

  h = 0.5 * (h + h.adjoint()).eval();
  return h;
}

Operator build_thermo_hamiltonian_intra(const ModelSpec& model) {
  const Index d = model.dim();
  Operator h = Operator::Zero(d, d);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntraTls>) {
          const Index n = model.n_max;
          const Operator sm = kron(Operator::Identity(n, n), tls_sigma_minus());
          h += model.drive.omega_d * (sm.adjoint() * sm).eval();
        } else if constexpr (std::is_same_v<T, IntraMaser>) {
          h += model.drive.omega_d * intra_projector(model, 2, 2);
          h += v.omega_3 * intra_projector(model, 3, 3);
        }
      },
      model.intra);
  return h;
}

Operator build_thermo_hamiltonian(const ModelSpec& model) {
  return model.drive.omega_d * cavity_number(model) +
         build_thermo_hamiltonian_intra(model);
}

std::vector<SuperOperator> build_channels(const ModelSpec& model) {
  std::vector<SuperOperator> out;
  out.reserve(model.channels.size());
  for (const auto& ch : model.channels) {
    SuperOperator s = SuperOperator::Zero(model.dim());
    for (const auto& jp : ch.jumps) {
      if (ch.occupation > 0) {
        s += (ch.rate * ch.occupation) * dissipator_super(jp.raising);
      }
      s += (ch.rate * (ch.occupation + 1.0)) * dissipator_super(jp.lowering);
    }
    out.push_back(std::move(s));
  }
  return out;
}

double occupation_to_temperature(double occupation, double omega) {
  if (occupation < 0 || !(omega > 0)) {
    throw InvalidDimensionError(
        "occupation_to_temperature: need n >= 0 and omega > 0");
  }
  if (occupation == 0.0) return 0.0;  // zero-temperature flag
  return omega / std::log1p(1.0 / occupation);
}

double bose_occupation(double temperature, double omega) {
  if (temperature <= 0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

DensityMatrix gibbs_state(const Operator& h, double temperature) {
  if (!(temperature > 0)) {
    throw InvalidDimensionError("gibbs_state: temperature must be positive");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailureError("gibbs_state: eigendecomposition failed");
  }
  const RealVector& e = solver.eigenvalues();
  RealVector w = (-(e.array() - e.minCoeff()) / temperature).exp();
  w /= w.sum();
  Matrix rho = solver.eigenvectors() * w.asDiagonal() *
               solver.eigenvectors().adjoint();
  return DensityMatrix(rho);
}

DensityMatrix thermal_cavity_state(const ModelSpec& model, double occupation) {
  const Index n = model.n_max;
  const Index di = model.intra_dimension();
  RealVector p(n);
  if (occupation <= 0) {
    p.setZero();
    p(0) = 1.0;
  } else {
    const double q = occupation / (occupation + 1.0);
    for (Index k = 0; k < n; ++k) p(k) = std::pow(q, static_cast<double>(k));
    p /= p.sum();
  }
  Operator rho = Operator::Zero(model.dim(), model.dim());
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < di; ++j) {
      rho(k * di + j, k * di + j) = p(k) / static_cast<double>(di);
    }
  }
  return DensityMatrix(rho);
}

Preset preset_from_name(const std::string& name) {
  if (name == "empty") return Preset::Empty;
  if (name == "kerr") return Preset::Kerr;
  if (name == "tls") return Preset::Tls;
  if (name == "maser") return Preset::Maser;
  throw ConfigError("unknown preset '" + name + "'");
}

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::Empty: return "empty";
    case Preset::Kerr: return "kerr";
    case Preset::Tls: return "tls";
    case Preset::Maser: return "maser";
  }
  return "?";
}

ModelSpec preset(Preset which, const PresetOverrides& ov) {
  ModelSpec m;
  m.omega_cavity = kOmegaOverKappa;
  m.drive.omega_d = m.omega_cavity - ov.delta.value_or(0.0);

  double f = 0.0;
  double n_c = 0.0;
  switch (which) {
    case Preset::Empty:
      m.n_max = 20;
      f = 0.1;
      n_c = 0.0;
      m.intra = IntraNone{};
      break;
    case Preset::Kerr:
      m.n_max = 30;
      f = 1.0;
      n_c = 0.5;
      m.intra = IntraKerr{0.05};
      break;
    case Preset::Tls:
      m.n_max = 20;
      f = 0.01;
      n_c = 0.1;  // "small n_c"; the paper caption lists no occupations
      m.intra = IntraTls{m.omega_cavity, 0.1};
      break;
    case Preset::Maser:
      m.n_max = 60;
      f = 0.1;
      n_c = 4.54;
      m.intra = IntraMaser{m.omega_cavity, 3.0 * m.omega_cavity, 0.7};
      break;
  }
  if (ov.n_max) m.n_max = *ov.n_max;
  if (ov.drive_amplitude) f = *ov.drive_amplitude;
  if (ov.n_c) n_c = *ov.n_c;
  m.drive.amplitude = Complex(f, 0.0);

  const Operator a = cavity_annihilation(m);
  BathChannel cavity;
  cavity.label = "cavity";
  cavity.kind = ChannelKind::CavityAccessible;
  cavity.rate = 1.0;
  cavity.occupation = n_c;
  cavity.reference_frequency = m.drive.omega_d;
  cavity.jumps.push_back({a, a.adjoint()});
  m.channels.push_back(std::move(cavity));

  if (which == Preset::Tls) {
    const Operator sm =
        kron(Operator::Identity(m.n_max, m.n_max), tls_sigma_minus());
    BathChannel qubit;
    qubit.label = "qubit";
    qubit.kind = ChannelKind::Intra;
    qubit.rate = 0.05;
    qubit.occupation = ov.n_intra.value_or(n_c);  // single-temperature default
    qubit.reference_frequency = m.drive.omega_d;
    qubit.jumps.push_back({sm, sm.adjoint()});
    m.channels.push_back(std::move(qubit));
  } else if (which == Preset::Maser) {
    const auto& intra = std::get<IntraMaser>(m.intra);
    const double t_hot = ov.T_hot.value_or(1.0e5);
    BathChannel hot;
    hot.label = "hot";
    hot.kind = ChannelKind::Intra;
    hot.rate = 0.5;
    hot.occupation = bose_occupation(t_hot, intra.omega_3);
    hot.reference_frequency = intra.omega_3;
    hot.jumps.push_back(
        {intra_projector(m, 1, 3), intra_projector(m, 3, 1)});
    m.channels.push_back(std::move(hot));

    BathChannel cold;
    cold.label = "cold";
    cold.kind = ChannelKind::Intra;
    cold.rate = 100.0;
    cold.occupation = 0.007;
    cold.reference_frequency = intra.omega_3 - m.drive.omega_d;
    cold.jumps.push_back(
        {intra_projector(m, 2, 3), intra_projector(m, 3, 2)});
    m.channels.push_back(std::move(cold));
  }

  return m;
}

}  // namespace cavthermo
