#pragma once

#include "cavthermo/types.hpp"

namespace cavthermo {

/// Truncated bosonic annihilation operator, <n|a|n+1> = sqrt(n+1).
Operator fock_annihilation(Index n_max);

/// Number operator diag(0, 1, ..., n_max-1).
Operator fock_number(Index n_max);

Operator kron(const Operator& a, const Operator& b);
SparseMatrix kron_sparse(const SparseMatrix& a, const SparseMatrix& b);

/// Tr{A rho}. Throws DimensionMismatchError on shape mismatch.
Complex expectation(const Operator& a, const Operator& rho);

/// Tr{A rho} for Hermitian A; throws if the imaginary part exceeds tol.
double expectation_real(const Operator& a, const Operator& rho,
                        double tol = 1e-8);

bool is_hermitian(const Operator& a, double tol = kHermTol);

double max_abs(const Matrix& a);

}  // namespace cavthermo
