#include "somor/matrix_kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace somor {

void check_finite(const Matrix& a, const char* name) {
  if (!a.allFinite()) {
    throw InvalidParameter(std::string(name) + " contains non-finite entries");
  }
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("solve_linear: coefficient matrix must be square");
  }
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve_linear: A vs B row counts");
  }
  if (a.rows() == 0) return Matrix(0, b.cols());
  Eigen::PartialPivLU<Matrix> lu(a);
  if (!(lu.rcond() > kRcondFloor)) {
    throw SingularMatrix("solve_linear: matrix is numerically singular");
  }
  return lu.solve(b);
}

SvdResult svd_decompose(const Matrix& a) {
  check_finite(a, "svd_decompose input");
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw ConvergenceFailure("svd_decompose: iteration did not converge");
  }
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

SchurResult real_schur(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("real_schur: input must be square");
  }
  check_finite(a, "real_schur input");
  if (a.rows() == 0) return {Matrix(0, 0), Matrix(0, 0)};
  Eigen::RealSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceFailure("real_schur: QR iteration did not converge");
  }
  return {schur.matrixU(), schur.matrixT()};
}

ComplexVector schur_eigenvalues(const Matrix& t) {
  const Index n = t.rows();
  ComplexVector eigs(n);
  Index i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      // 2x2 block; RealSchur leaves these only for complex pairs.
      const double tr = t(i, i) + t(i + 1, i + 1);
      const double det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
      const double disc = det - 0.25 * tr * tr;
      const double im = std::sqrt(std::max(disc, 0.0));
      eigs[i] = Complex(0.5 * tr, im);
      eigs[i + 1] = Complex(0.5 * tr, -im);
      i += 2;
    } else {
      eigs[i] = Complex(t(i, i), 0.0);
      ++i;
    }
  }
  return eigs;
}

Matrix psd_lowrank_factor(const Matrix& p, double rel_tol) {
  if (p.rows() != p.cols()) {
    throw DimensionMismatch("psd_lowrank_factor: input must be square");
  }
  check_finite(p, "psd_lowrank_factor input");
  const Index n = p.rows();
  if (n == 0) return Matrix(0, 0);

  const Matrix sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceFailure("psd_lowrank_factor: eigendecomposition failed");
  }
  const Vector& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = std::max(lambda(n - 1), 0.0);
  const double cut = rel_tol * lambda_max;
  if (-lambda(0) > cut) {
    throw IndefiniteMatrix("psd_lowrank_factor: most negative eigenvalue " +
                           std::to_string(lambda(0)) + " exceeds cut " +
                           std::to_string(cut));
  }

  Index kept = 0;
  for (Index i = 0; i < n; ++i) {
    if (lambda(i) >= cut && lambda(i) > 0.0) ++kept;
  }
  Matrix r(n, kept);
  // Largest eigenvalues first.
  for (Index j = 0; j < kept; ++j) {
    const Index src = n - 1 - j;
    r.col(j) = eig.eigenvectors().col(src) * std::sqrt(lambda(src));
  }
  return r;
}

}  // namespace somor
