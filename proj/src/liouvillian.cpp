#include "cavthermo/liouvillian.hpp"

#include <cmath>
#include <random>

#include "cavthermo/operators.hpp"

namespace cavthermo {

Liouvillian assemble(const ModelSpec& model, Index dim_cap) {
  model.validate();
  const Index d = model.dim();
  if (d > dim_cap) {
    throw InvalidDimensionError(
        "assemble: Hilbert dimension " + std::to_string(d) +
        " (superoperator " + std::to_string(d * d) + "x" +
        std::to_string(d * d) + ") exceeds cap " + std::to_string(dim_cap));
  }
  Liouvillian l;
  l.model = model;
  l.hamiltonian_part = commutator_super(build_hamiltonian_rotating(model));
  l.channel_parts = build_channels(model);
  l.total = l.hamiltonian_part;
  for (const auto& part : l.channel_parts) l.total += part;

  const double defect = l.total.trace_defect();
  if (defect > 1e-10 * std::max(1.0, max_abs(Matrix(l.total.matrix())))) {
    throw NumericalFailureError("assemble: generator is not trace-preserving");
  }
  return l;
}

ShiftedForm shifted_form(const Liouvillian& liouvillian,
                         const DensityMatrix& rho) {
  const ModelSpec& model = liouvillian.model;
  const Operator a = cavity_annihilation(model);
  const Complex alpha = expectation(a, rho.matrix());

  ShiftedForm out;
  out.alpha = alpha;
  const Operator id = Operator::Identity(model.dim(), model.dim());
  const Operator b = a - alpha * id;

  Operator h = build_hamiltonian_rotating(model);
  for (std::size_t i = 0; i < model.channels.size(); ++i) {
    const BathChannel& ch = model.channels[i];
    if (ch.kind != ChannelKind::CavityAccessible) continue;
    h += (kI * 0.5 * ch.rate) *
         (std::conj(alpha) * a - alpha * a.adjoint());
    SuperOperator part = SuperOperator::Zero(model.dim());
    if (ch.occupation > 0) {
      part += (ch.rate * ch.occupation) * dissipator_super(b.adjoint());
    }
    part += (ch.rate * (ch.occupation + 1.0)) * dissipator_super(b);
    out.shifted_parts.emplace_back(i, std::move(part));
  }
  out.h_shifted = 0.5 * (h + h.adjoint()).eval();
  return out;
}

SuperOperator shifted_total(const Liouvillian& liouvillian,
                            const ShiftedForm& shifted) {
  SuperOperator total = commutator_super(shifted.h_shifted);
  std::vector<bool> replaced(liouvillian.channel_parts.size(), false);
  for (const auto& [idx, part] : shifted.shifted_parts) {
    total += part;
    replaced[idx] = true;
  }
  for (std::size_t i = 0; i < liouvillian.channel_parts.size(); ++i) {
    if (!replaced[i]) total += liouvillian.channel_parts[i];
  }
  return total;
}

double shift_action_defect(const Liouvillian& liouvillian,
                           const ShiftedForm& shifted, int samples,
                           uint64_t seed) {
  const Index d = liouvillian.model.dim();
  const SuperOperator alt = shifted_total(liouvillian, shifted);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    const Matrix diff = liouvillian.total.apply(rho) - alt.apply(rho);
    worst = std::max(worst, max_abs(diff));
  }
  return worst;
}

TruncationReport truncation_report(const DensityMatrix& rho,
                                   const ModelSpec& model) {
  if (rho.dim() != model.dim()) {
    throw DimensionMismatchError("truncation_report: dimension mismatch");
  }
  const Index di = model.intra_dimension();
  const Index top_start =
      model.n_max - static_cast<Index>(std::ceil(0.1 * model.n_max));
  double tail = 0.0;
  for (Index n = top_start; n < model.n_max; ++n) {
    for (Index j = 0; j < di; ++j) {
      tail += rho.matrix()(n * di + j, n * di + j).real();
    }
  }
  TruncationReport report;
  report.cavity_tail_mass = std::max(0.0, tail);
  if (report.cavity_tail_mass > 1e-3) {
    throw TruncationError("truncation_report: tail mass " +
                          std::to_string(report.cavity_tail_mass) +
                          " exceeds 1e-3; increase n_max");
  }
  if (report.cavity_tail_mass > 1e-6) {
    report.warnings.push_back("cavity tail mass " +
                              std::to_string(report.cavity_tail_mass) +
                              " exceeds 1e-6");
  }
  return report;
}

}  // namespace cavthermo
