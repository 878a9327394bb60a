#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cavthermo/density_matrix.hpp"
#include "cavthermo/superoperator.hpp"
#include "cavthermo/types.hpp"

namespace cavthermo {

enum class ChannelKind { CavityAccessible, CavityInaccessible, Intra };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& s);

/// One jump pair on the full cavity (x) intra space; raising is the adjoint
/// of lowering for every model in scope.
struct JumpPair {
  Operator lowering;
  Operator raising;
};

struct BathChannel {
  std::string label;
  ChannelKind kind = ChannelKind::CavityAccessible;
  double rate = 1.0;              // kappa_j, gamma_k, gamma, gamma_H, gamma_C
  double occupation = 0.0;        // n_c, n_k, n_q, n_H, n_C
  double reference_frequency = 0; // frequency entering the Bose map
  std::vector<JumpPair> jumps;
};

struct DriveSpec {
  Complex amplitude{0.0, 0.0};  // f
  double omega_d = 0.0;
};

struct IntraNone {};
struct IntraKerr {
  double kerr_shift = 0.0;  // K
};
struct IntraTls {
  double omega_q = 0.0;
  double coupling = 0.0;  // g
};
struct IntraMaser {
  double omega_2 = 0.0;
  double omega_3 = 0.0;  // requires omega_3 > omega_2
  double coupling = 0.0;
};
using IntraSystem = std::variant<IntraNone, IntraKerr, IntraTls, IntraMaser>;

Index intra_dim(const IntraSystem& intra);
std::string intra_name(const IntraSystem& intra);

/// Full parameterization of cavity, drive, intra-cavity system and baths.
/// Immutable by convention: builders are pure functions of the spec.
struct ModelSpec {
  double omega_cavity = 0.0;  // Omega
  Index n_max = 0;            // Fock truncation
  DriveSpec drive;
  IntraSystem intra = IntraNone{};
  std::vector<BathChannel> channels;

  Index intra_dimension() const { return intra_dim(intra); }
  Index dim() const { return n_max * intra_dimension(); }
  double delta() const { return omega_cavity - drive.omega_d; }

  const BathChannel* find_channel(const std::string& label) const;
  /// First cavity-accessible channel; the coherent drive feeds this one.
  const BathChannel& drive_channel() const;

  /// Checks invariants (throws) and returns soft warnings.
  std::vector<std::string> validate() const;

  uint64_t fingerprint() const;
};

/// Full-space annihilation operator kron(a, I_intra).
Operator cavity_annihilation(const ModelSpec& model);
Operator cavity_number(const ModelSpec& model);
/// Projector |i><j| of the intra system lifted to the full space (1-based).
Operator intra_projector(const ModelSpec& model, int i, int j);

/// Rotating-frame Hamiltonian at the drive frequency:
/// Delta a^dag a + H'_rot + i sqrt(kappa) (f* a - f a^dag).
Operator build_hamiltonian_rotating(const ModelSpec& model);

/// Thermodynamic Hamiltonian H_TD = omega_d a^dag a + H'_TD.
Operator build_thermo_hamiltonian(const ModelSpec& model);
/// Intra part H'_TD only (zero matrix for empty/Kerr).
Operator build_thermo_hamiltonian_intra(const ModelSpec& model);

/// Per-channel dissipators rate*occ*D[raise] + rate*(occ+1)*D[lower],
/// ordered as model.channels.
std::vector<SuperOperator> build_channels(const ModelSpec& model);

/// T = omega / ln(1 + 1/n); returns 0 for n = 0 (zero-temperature flag).
double occupation_to_temperature(double occupation, double omega);
double bose_occupation(double temperature, double omega);

/// Gibbs state of the given Hermitian operator at temperature T > 0.
DensityMatrix gibbs_state(const Operator& h, double temperature);
/// Truncated thermal cavity state at occupation n on the full model space.
DensityMatrix thermal_cavity_state(const ModelSpec& model, double occupation);

enum class Preset { Empty, Kerr, Tls, Maser };

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);

struct PresetOverrides {
  std::optional<double> delta;            // Omega - omega_d
  std::optional<double> drive_amplitude;  // real f
  std::optional<double> n_c;              // cavity occupation
  std::optional<double> n_intra;          // qubit occupation (tls)
  std::optional<double> T_hot;            // hot bath temperature (maser)
  std::optional<Index> n_max;
};

/// Paper parameter sets in kappa = 1 units; omega_d = Omega unless a
/// detuning override is supplied.
ModelSpec preset(Preset which, const PresetOverrides& overrides = {});

}  // namespace cavthermo
