#pragma once

#include "cavthermo/types.hpp"

namespace cavthermo {

/// Linear map on vectorized operators with the column-stacking convention:
/// vec(A rho B) = kron(B^T, A) vec(rho). Stored sparse; acts on a Hilbert
/// space of dimension dim(), so the matrix is dim^2 x dim^2.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(SparseMatrix m, Index hilbert_dim);

  static SuperOperator Zero(Index hilbert_dim);

  Index dim() const { return dim_; }
  const SparseMatrix& matrix() const { return mat_; }

  Operator apply(const Operator& rho) const;
  Vector apply_vec(const Vector& v) const;

  /// max |vec(I)^dagger S| -- zero for trace-preserving generators.
  double trace_defect() const;

  SuperOperator& operator+=(const SuperOperator& other);
  SuperOperator& operator-=(const SuperOperator& other);
  SuperOperator& operator*=(double s);
  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) {
    a += b;
    return a;
  }
  friend SuperOperator operator-(SuperOperator a, const SuperOperator& b) {
    a -= b;
    return a;
  }
  friend SuperOperator operator*(double s, SuperOperator a) {
    a *= s;
    return a;
  }

 private:
  SparseMatrix mat_;
  Index dim_ = 0;
};

/// D[L]: rho -> L rho L^dag - 1/2 {L^dag L, rho}.
SuperOperator dissipator_super(const Operator& jump);

/// rho -> -i [H, rho]. Throws InvalidHamiltonianError for non-Hermitian H.
SuperOperator commutator_super(const Operator& hamiltonian);

Vector vectorize(const Operator& rho);
Operator unvectorize(const Vector& v, Index dim);

}  // namespace cavthermo
