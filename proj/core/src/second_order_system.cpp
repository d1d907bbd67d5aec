#include "somor/second_order_system.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace somor {

namespace {

void check_dims(const Matrix& a, Index rows, Index cols, const char* name) {
  if (a.rows() != rows || a.cols() != cols) {
    throw DimensionMismatch(std::string(name) + ": expected " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
}

Matrix companion_e(const SecondOrderSystem& sos) {
  const Index n = sos.dim();
  Matrix e = Matrix::Zero(2 * n, 2 * n);
  e.topLeftCorner(n, n).setIdentity();
  e.bottomRightCorner(n, n) = sos.m();
  return e;
}

Matrix companion_a(const SecondOrderSystem& sos) {
  const Index n = sos.dim();
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n).setIdentity();
  a.bottomLeftCorner(n, n) = -sos.k();
  a.bottomRightCorner(n, n) = -sos.d();
  return a;
}

}  // namespace

const char* to_string(SubsystemTag tag) {
  switch (tag) {
    case SubsystemTag::so:
      return "so";
    case SubsystemTag::x0:
      return "x0";
    case SubsystemTag::v0:
      return "v0";
  }
  return "?";
}

double pencil_abscissa(const Matrix& e, const Matrix& a) {
  if (e.rows() != e.cols() || a.rows() != a.cols() || e.rows() != a.rows()) {
    throw DimensionMismatch("pencil_abscissa: square matrices of equal size required");
  }
  const Index n = e.rows();
  if (n == 0) return -std::numeric_limits<double>::infinity();
  Eigen::GeneralizedEigenSolver<Matrix> ges(a, e, false);
  if (ges.info() != Eigen::Success) {
    throw ConvergenceFailure("pencil_abscissa: QZ iteration did not converge");
  }
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  double abscissa = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const Complex alpha = ges.alphas()(i);
    const double beta = ges.betas()(i);
    if (std::abs(beta) * scale <= std::abs(alpha) * 1e-14 ||
        beta == 0.0) {
      // Eigenvalue at (or numerically at) infinity.
      return std::numeric_limits<double>::infinity();
    }
    abscissa = std::max(abscissa, alpha.real() / beta);
  }
  return abscissa;
}

SecondOrderSystem::SecondOrderSystem(Matrix m, Matrix d, Matrix k, Matrix b,
                                     Matrix c, Matrix x0, Matrix v0,
                                     StabilityPolicy policy)
    : m_(std::move(m)),
      d_(std::move(d)),
      k_(std::move(k)),
      b_(std::move(b)),
      c_(std::move(c)),
      x0_(std::move(x0)),
      v0_(std::move(v0)) {
  const Index n = m_.rows();
  check_dims(m_, n, n, "M");
  check_dims(d_, n, n, "D");
  check_dims(k_, n, n, "K");
  if (b_.rows() != n) throw DimensionMismatch("B vs M row counts");
  if (c_.cols() != n) throw DimensionMismatch("C vs M column counts");
  if (x0_.rows() != n) throw DimensionMismatch("X0 vs M row counts");
  if (v0_.rows() != n) throw DimensionMismatch("V0 vs M row counts");
  check_finite(m_, "M");
  check_finite(d_, "D");
  check_finite(k_, "K");
  check_finite(b_, "B");
  check_finite(c_, "C");
  check_finite(x0_, "X0");
  check_finite(v0_, "V0");
  if (n > 0) {
    Eigen::PartialPivLU<Matrix> lu(m_);
    if (!(lu.rcond() > kRcondFloor)) {
      throw SingularMatrix("SecondOrderSystem: M is numerically singular");
    }
  }
  if (policy == StabilityPolicy::check_eagerly) {
    abscissa_ = pencil_abscissa(companion_e(*this), companion_a(*this));
    if (!(*abscissa_ < 0.0)) {
      throw UnstablePencil("SecondOrderSystem: quadratic pencil is not "
                           "asymptotically stable (abscissa " +
                           std::to_string(*abscissa_) + ")");
    }
  }
}

double SecondOrderSystem::spectral_abscissa() const {
  if (abscissa_) return *abscissa_;
  return pencil_abscissa(companion_e(*this), companion_a(*this));
}

void SecondOrderSystem::require_stable(const char* op) const {
  if (!stable()) {
    throw UnstablePencil(std::string(op) +
                         ": system is not asymptotically stable");
  }
}

FirstOrderSystem companion(const SecondOrderSystem& sos) {
  const Index n = sos.dim();
  FirstOrderSystem fos;
  fos.e = companion_e(sos);
  fos.a = companion_a(sos);
  fos.b = Matrix::Zero(2 * n, sos.num_inputs());
  fos.b.bottomRows(n) = sos.b();
  fos.c = Matrix::Zero(sos.num_outputs(), 2 * n);
  fos.c.leftCols(n) = sos.c();
  return fos;
}

Matrix subsystem_input_matrix(const SecondOrderSystem& sos, SubsystemTag tag) {
  const Index n = sos.dim();
  switch (tag) {
    case SubsystemTag::so: {
      Matrix b = Matrix::Zero(2 * n, sos.num_inputs());
      b.bottomRows(n) = sos.b();
      return b;
    }
    case SubsystemTag::x0: {
      Matrix b = Matrix::Zero(2 * n, sos.x0_cols());
      b.topRows(n) = sos.x0();
      return b;
    }
    case SubsystemTag::v0: {
      Matrix b = Matrix::Zero(2 * n, sos.v0_cols());
      b.bottomRows(n) = sos.m() * sos.v0();
      return b;
    }
  }
  throw InvalidParameter("subsystem_input_matrix: unknown tag");
}

FirstOrderSystem companion_for_tag(const SecondOrderSystem& sos,
                                   SubsystemTag tag) {
  FirstOrderSystem fos = companion(sos);
  fos.b = subsystem_input_matrix(sos, tag);
  return fos;
}

ComplexMatrix eval_transfer(const SecondOrderSystem& sos, SubsystemTag tag,
                            Complex s) {
  const Index n = sos.dim();
  ComplexMatrix rhs;
  switch (tag) {
    case SubsystemTag::so:
      rhs = sos.b().cast<Complex>();
      break;
    case SubsystemTag::x0:
      rhs = (sos.d().cast<Complex>() + s * sos.m().cast<Complex>()) *
            sos.x0().cast<Complex>();
      break;
    case SubsystemTag::v0:
      rhs = (sos.m() * sos.v0()).cast<Complex>();
      break;
  }
  if (n == 0) return ComplexMatrix::Zero(sos.num_outputs(), rhs.cols());
  ComplexMatrix pencil = s * s * sos.m().cast<Complex>() +
                         s * sos.d().cast<Complex>() + sos.k().cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(pencil);
  if (!(lu.rcond() > kRcondFloor)) {
    throw SingularPencil("eval_transfer: s^2 M + s D + K is singular at s");
  }
  return sos.c().cast<Complex>() * lu.solve(rhs);
}

ComplexMatrix eval_transfer(const FirstOrderSystem& fos, Complex s) {
  if (fos.order() == 0) {
    return ComplexMatrix::Zero(fos.num_outputs(), fos.num_inputs());
  }
  ComplexMatrix pencil = s * fos.e.cast<Complex>() - fos.a.cast<Complex>();
  Eigen::PartialPivLU<ComplexMatrix> lu(pencil);
  if (!(lu.rcond() > kRcondFloor)) {
    throw SingularPencil("eval_transfer: s E - A is singular at s");
  }
  return fos.c.cast<Complex>() * lu.solve(fos.b.cast<Complex>());
}

StabilityReport stability_check(const FirstOrderSystem& fos) {
  if (fos.order() == 0) {
    return {true, -std::numeric_limits<double>::infinity()};
  }
  const Matrix a_std = solve_linear(fos.e, fos.a);
  Eigen::EigenSolver<Matrix> eig(a_std, false);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceFailure("stability_check: eigensolver did not converge");
  }
  const double abscissa = eig.eigenvalues().real().maxCoeff();
  return {abscissa < 0.0, abscissa};
}

}  // namespace somor
