#pragma once

#include "somor/errors.hpp"
#include "somor/types.hpp"

namespace somor {

// Reciprocal-condition floor below which a factorization is treated as singular.
inline constexpr double kRcondFloor = 1e-14;

// Default relative eigenvalue cutoff when factoring Gramians.
inline constexpr double kGramianFactorTol = 1e-12;

struct SvdResult {
  Matrix u;      // orthonormal columns
  Vector sigma;  // nonincreasing, nonnegative
  Matrix x;      // orthonormal columns; input = u * sigma.asDiagonal() * x^T
};

struct SchurResult {
  Matrix q;  // orthogonal
  Matrix t;  // quasi upper triangular, 1x1 / 2x2 diagonal blocks
};

// Throws InvalidParameter if any entry of a is NaN or infinite.
void check_finite(const Matrix& a, const char* name);

// Solves A X = B for square A. Throws SingularMatrix when the reciprocal
// condition estimate of the LU factorization falls below kRcondFloor.
Matrix solve_linear(const Matrix& a, const Matrix& b);

// Full SVD data with sigma sorted nonincreasing.
SvdResult svd_decompose(const Matrix& a);

// Real Schur decomposition A = Q T Q^T.
SchurResult real_schur(const Matrix& a);

// Eigenvalues read off the diagonal blocks of a real Schur form T.
ComplexVector schur_eigenvalues(const Matrix& t);

// Low-rank factor R with P ~= R R^T for a symmetric PSD (up to round-off)
// matrix P. The input is symmetrized as (P + P^T)/2 first. Eigenpairs with
// lambda >= rel_tol * lambda_max are kept, everything smaller (including
// small round-off negatives) is discarded, so
//   ||P - R R^T||_2 <= rel_tol * lambda_max + |most negative discarded lambda|.
// Throws IndefiniteMatrix when the most negative eigenvalue exceeds
// rel_tol * lambda_max in magnitude.
Matrix psd_lowrank_factor(const Matrix& p, double rel_tol = kGramianFactorTol);

}  // namespace somor
