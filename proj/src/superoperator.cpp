#include "cavthermo/superoperator.hpp"

#include "cavthermo/operators.hpp"

namespace cavthermo {

namespace {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix to_sparse(const Operator& a) {
  return a.sparseView(1.0, 0.0);  // keep exact nonzeros
}

}  // namespace

SuperOperator::SuperOperator(SparseMatrix m, Index hilbert_dim)
    : mat_(std::move(m)), dim_(hilbert_dim) {
  if (mat_.rows() != dim_ * dim_ || mat_.cols() != dim_ * dim_) {
    throw DimensionMismatchError("SuperOperator: matrix must be dim^2 x dim^2");
  }
}

SuperOperator SuperOperator::Zero(Index hilbert_dim) {
  return SuperOperator(SparseMatrix(hilbert_dim * hilbert_dim,
                                    hilbert_dim * hilbert_dim),
                       hilbert_dim);
}

Operator SuperOperator::apply(const Operator& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionMismatchError("SuperOperator::apply: state dimension " +
                                 std::to_string(rho.rows()) +
                                 " does not match " + std::to_string(dim_));
  }
  return unvectorize(mat_ * vectorize(rho), dim_);
}

Vector SuperOperator::apply_vec(const Vector& v) const { return mat_ * v; }

double SuperOperator::trace_defect() const {
  // row vector vec(I)^dagger times S, i.e. the trace of S(rho) as a
  // functional of vec(rho); its largest entry bounds |Tr{S rho}|.
  Vector tr = Vector::Zero(dim_ * dim_);
  for (Index k = 0; k < dim_; ++k) tr(k * dim_ + k) = 1.0;
  Vector row = mat_.adjoint() * tr;
  return row.cwiseAbs().maxCoeff();
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  if (dim_ == 0) {
    *this = other;
    return *this;
  }
  if (other.dim_ != dim_) {
    throw DimensionMismatchError("SuperOperator +=: dimension mismatch");
  }
  mat_ += other.mat_;
  return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other) {
  if (dim_ == 0) {
    *this = other;
    mat_ *= Complex(-1.0, 0.0);
    return *this;
  }
  if (other.dim_ != dim_) {
    throw DimensionMismatchError("SuperOperator -=: dimension mismatch");
  }
  mat_ -= other.mat_;
  return *this;
}

SuperOperator& SuperOperator::operator*=(double s) {
  mat_ *= Complex(s, 0.0);
  return *this;
}

SuperOperator dissipator_super(const Operator& jump) {
  if (jump.rows() != jump.cols()) {
    throw InvalidDimensionError("dissipator_super: jump operator not square");
  }
  const Index n = jump.rows();
  const SparseMatrix l = to_sparse(jump);
  const SparseMatrix ldl = to_sparse((jump.adjoint() * jump).eval());
  const SparseMatrix id = sparse_identity(n);
  // vec(L rho L^dag) = kron(conj(L), L) vec(rho)
  SparseMatrix m = kron_sparse(l.conjugate(), l);
  m -= Complex(0.5, 0.0) * kron_sparse(id, ldl);
  m -= Complex(0.5, 0.0) * kron_sparse(SparseMatrix(ldl.transpose()), id);
  return SuperOperator(std::move(m), n);
}

SuperOperator commutator_super(const Operator& hamiltonian) {
  if (!is_hermitian(hamiltonian, 1e-12)) {
    throw InvalidHamiltonianError(
        "commutator_super: Hamiltonian is not Hermitian");
  }
  const Index n = hamiltonian.rows();
  const SparseMatrix h = to_sparse(hamiltonian);
  const SparseMatrix id = sparse_identity(n);
  SparseMatrix m =
      -kI * (kron_sparse(id, h) - kron_sparse(SparseMatrix(h.transpose()), id));
  return SuperOperator(std::move(m), n);
}

Vector vectorize(const Operator& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Operator unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) {
    throw DimensionMismatchError("unvectorize: length mismatch");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace cavthermo
