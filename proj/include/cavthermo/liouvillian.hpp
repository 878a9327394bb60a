#pragma once

#include <vector>

#include "cavthermo/model.hpp"
#include "cavthermo/superoperator.hpp"

namespace cavthermo {

/// Assembled GKSL generator with bath-resolved dissipator parts:
/// total = hamiltonian_part + sum(channel_parts).
struct Liouvillian {
  ModelSpec model;
  SuperOperator total;
  SuperOperator hamiltonian_part;
  std::vector<SuperOperator> channel_parts;  // aligned with model.channels
};

/// Builds the full generator. Refuses Hilbert dimensions above `dim_cap`.
Liouvillian assemble(const ModelSpec& model, Index dim_cap = 512);

/// Rewriting of the cavity dissipators and Hamiltonian around the coherent
/// amplitude alpha = <a>; leaves the total generator invariant.
struct ShiftedForm {
  Complex alpha{0.0, 0.0};
  Operator h_shifted;
  /// (channel index, shifted dissipator) for each cavity-accessible channel.
  std::vector<std::pair<std::size_t, SuperOperator>> shifted_parts;
};

ShiftedForm shifted_form(const Liouvillian& liouvillian,
                         const DensityMatrix& rho);

/// -i[H_s, .] + shifted accessible parts + unshifted remaining parts.
SuperOperator shifted_total(const Liouvillian& liouvillian,
                            const ShiftedForm& shifted);

/// Largest deviation of the shifted rewriting from the original generator
/// over `samples` pseudo-random states (deterministic seed).
double shift_action_defect(const Liouvillian& liouvillian,
                           const ShiftedForm& shifted, int samples = 20,
                           uint64_t seed = 12345);

/// Tail mass per subsystem; warns above 1e-6 and throws TruncationError
/// above 1e-3 cavity tail mass.
struct TruncationReport {
  double cavity_tail_mass = 0.0;
  double intra_tail_mass = 0.0;  // intra levels are not truncated
  std::vector<std::string> warnings;
};

TruncationReport truncation_report(const DensityMatrix& rho,
                                   const ModelSpec& model);

}  // namespace cavthermo
