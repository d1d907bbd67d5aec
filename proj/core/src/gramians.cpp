#include "somor/gramians.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "somor/parallel.hpp"

namespace somor {

namespace {

struct DiagBlock {
  Index start;
  Index size;
};

std::vector<DiagBlock> diag_blocks(const Matrix& t) {
  std::vector<DiagBlock> blocks;
  Index i = 0;
  const Index n = t.rows();
  while (i < n) {
    const Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    blocks.push_back({i, size});
    i += size;
  }
  return blocks;
}

// Solves T1 Y + Y T2^T = C for quasi upper triangular T1 (n1 x n1) and
// T2 (n2 x n2) by block back-substitution; diagonal-block couplings are
// resolved through Kronecker systems of size at most 4.
Matrix solve_sylvester_schur(const Matrix& t1, const Matrix& t2,
                             const Matrix& c) {
  const Index n1 = t1.rows();
  const Index n2 = t2.rows();
  Matrix y = Matrix::Zero(n1, n2);
  if (n1 == 0 || n2 == 0) return y;
  const auto blocks1 = diag_blocks(t1);
  const auto blocks2 = diag_blocks(t2);
  for (auto i = blocks1.rbegin(); i != blocks1.rend(); ++i) {
    const Index p = i->size;
    const Index below = i->start + p;
    for (auto j = blocks2.rbegin(); j != blocks2.rend(); ++j) {
      const Index q = j->size;
      const Index right = j->start + q;
      Matrix rhs = c.block(i->start, j->start, p, q);
      if (below < n1) {
        rhs.noalias() -= t1.block(i->start, below, p, n1 - below) *
                         y.block(below, j->start, n1 - below, q);
      }
      if (right < n2) {
        rhs.noalias() -= y.block(i->start, right, p, n2 - right) *
                         t2.block(j->start, right, q, n2 - right).transpose();
      }
      // (I_q (x) T1_ii + T2_jj (x) I_p) vec(X) = vec(rhs), column-major vec.
      Matrix small = Matrix::Zero(p * q, p * q);
      for (Index col = 0; col < q; ++col) {
        small.block(col * p, col * p, p, p) =
            t1.block(i->start, i->start, p, p);
        for (Index row = 0; row < q; ++row) {
          small.block(row * p, col * p, p, p).diagonal().array() +=
              t2(j->start + row, j->start + col);
        }
      }
      Eigen::Map<Vector> rhs_vec(rhs.data(), p * q);
      Eigen::PartialPivLU<Matrix> lu(small);
      const Vector x = lu.solve(rhs_vec);
      y.block(i->start, j->start, p, q) =
          Eigen::Map<const Matrix>(x.data(), p, q);
    }
  }
  return y;
}

// Antidiagonal flip of a square matrix.
Matrix flip(const Matrix& a) {
  return a.rowwise().reverse().colwise().reverse();
}

// Parlett-Reinsch balancing with powers of two (exact similarity): rescales
// rows/columns of a in place, returns the diagonal of the transformation.
// Reduced-model pencils can carry wildly inhomogeneous scales; without this
// the back-substitution loses enough precision to miss the residual
// contract.
Vector balance_in_place(Matrix& a) {
  const Index n = a.rows();
  Vector d = Vector::Ones(n);
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Index i = 0; i < n; ++i) {
      double c = a.col(i).lpNorm<1>() - std::abs(a(i, i));
      double r = a.row(i).lpNorm<1>() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0 || !std::isfinite(c) || !std::isfinite(r)) {
        continue;
      }
      const double total = c + r;
      double f = 1.0;
      while (c < 0.5 * r) {
        c *= 2.0;
        r *= 0.5;
        f *= 2.0;
      }
      while (c > 2.0 * r) {
        c *= 0.5;
        r *= 2.0;
        f *= 0.5;
      }
      if (f != 1.0 && c + r < 0.95 * total) {
        d(i) *= f;
        a.col(i) *= f;
        a.row(i) /= f;
        converged = false;
      }
    }
  }
  return d;
}

constexpr int kMaxRefinements = 5;

}  // namespace

PencilContext::PencilContext(Matrix e, Matrix a)
    : e_(std::move(e)), a_(std::move(a)) {
  if (e_.rows() != e_.cols() || a_.rows() != a_.cols() ||
      e_.rows() != a_.rows()) {
    throw DimensionMismatch("PencilContext: E and A must be square and equal");
  }
  check_finite(e_, "E");
  check_finite(a_, "A");
  if (order() == 0) {
    abscissa_ = -std::numeric_limits<double>::infinity();
    return;
  }
  e_lu_.compute(e_);
  if (!(e_lu_.rcond() > kRcondFloor)) {
    throw SingularMatrix("PencilContext: E is numerically singular");
  }
  Matrix a_std = e_lu_.solve(a_);
  balance_ = balance_in_place(a_std);
  schur_ = real_schur(a_std);
  abscissa_ = schur_eigenvalues(schur_.t).real().maxCoeff();
}

void PencilContext::require_stable(const char* op) const {
  if (!stable()) {
    throw UnstablePencil(std::string(op) + ": pencil is not asymptotically "
                         "stable (abscissa " + std::to_string(abscissa_) + ")");
  }
}

Matrix PencilContext::solve_e(const Matrix& rhs) const {
  return e_lu_.solve(rhs);
}

Matrix PencilContext::solve_e_transposed(const Matrix& rhs) const {
  return e_lu_.transpose().solve(rhs);
}

// X with (E^{-1}A) X + X (E^{-1}A)^T = S for symmetric S.
Matrix PencilContext::solve_standard_sym(const Matrix& s) const {
  const auto dinv = balance_.cwiseInverse();
  const Matrix s_b = dinv.asDiagonal() * s * dinv.asDiagonal();
  const Matrix g = schur_.q.transpose() * s_b * schur_.q;
  const Matrix y = solve_sylvester_schur(schur_.t, schur_.t, g);
  Matrix x = schur_.q * y * schur_.q.transpose();
  x = balance_.asDiagonal() * x * balance_.asDiagonal();
  return 0.5 * (x + x.transpose());
}

// Z with (E^{-1}A)^T Z + Z (E^{-1}A) = S for symmetric S, via the
// antidiagonal flip that restores quasi upper triangular shape.
Matrix PencilContext::solve_standard_dual_sym(const Matrix& s) const {
  const Matrix s_b = balance_.asDiagonal() * s * balance_.asDiagonal();
  const Matrix g = schur_.q.transpose() * s_b * schur_.q;
  const Matrix t_hat = flip(schur_.t.transpose());
  const Matrix y_hat = solve_sylvester_schur(t_hat, t_hat, flip(g));
  const Matrix y = flip(y_hat);
  Matrix z = schur_.q * y * schur_.q.transpose();
  const auto dinv = balance_.cwiseInverse();
  z = dinv.asDiagonal() * z * dinv.asDiagonal();
  return 0.5 * (z + z.transpose());
}

// X with (E^{-1}A) X + X (E_r^{-1}A_r)^T = S.
Matrix PencilContext::solve_standard_cross(const PencilContext& full,
                                           const PencilContext& red,
                                           const Matrix& s) {
  const Matrix s_b = full.balance_.cwiseInverse().asDiagonal() * s *
                     red.balance_.cwiseInverse().asDiagonal();
  const Matrix g =
      full.schur_.q.transpose() * s_b * red.schur_.q;
  const Matrix y = solve_sylvester_schur(full.schur_.t, red.schur_.t, g);
  Matrix x = full.schur_.q * y * red.schur_.q.transpose();
  return full.balance_.asDiagonal() * x * red.balance_.asDiagonal();
}

Matrix PencilContext::controllability_gramian(const Matrix& f) const {
  if (f.rows() != order()) {
    throw DimensionMismatch("controllability_gramian: F vs E row counts");
  }
  const Index n = order();
  if (n == 0 || f.cols() == 0) return Matrix::Zero(n, n);
  require_stable("controllability_gramian");
  check_finite(f, "F");

  const Matrix rhs = f * f.transpose();
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return Matrix::Zero(n, n);

  const Matrix f_std = solve_e(f);
  Matrix p = solve_standard_sym(-(f_std * f_std.transpose()));

  for (int it = 0; it <= kMaxRefinements; ++it) {
    const Matrix res =
        a_ * p * e_.transpose() + e_ * p * a_.transpose() + rhs;
    if (res.norm() <= kLyapunovResidualTol * rhs_norm) return p;
    // A dP E^T + E dP A^T = -res, in standard form with E^{-1} res E^{-T}.
    const Matrix res_std = solve_e(solve_e(res).transpose()).transpose();
    p += solve_standard_sym(-0.5 * (res_std + res_std.transpose()));
  }
  throw ConvergenceFailure(
      "controllability_gramian: residual contract not met after refinement");
}

Matrix PencilContext::observability_gramian(const Matrix& c) const {
  if (c.cols() != order()) {
    throw DimensionMismatch("observability_gramian: C vs E column counts");
  }
  const Index n = order();
  if (n == 0 || c.rows() == 0) return Matrix::Zero(n, n);
  require_stable("observability_gramian");
  check_finite(c, "C");

  const Matrix rhs = c.transpose() * c;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return Matrix::Zero(n, n);

  // Standard-form dual solution Z, recovered as Q = E^{-T} Z E^{-1}.
  auto recover = [&](const Matrix& z) {
    const Matrix w = solve_e_transposed(z);
    Matrix q = solve_e_transposed(w.transpose()).transpose();
    return (0.5 * (q + q.transpose())).eval();
  };

  Matrix q = recover(solve_standard_dual_sym(-rhs));
  for (int it = 0; it <= kMaxRefinements; ++it) {
    const Matrix res =
        a_.transpose() * q * e_ + e_.transpose() * q * a_ + rhs;
    if (res.norm() <= kLyapunovResidualTol * rhs_norm) return q;
    // A^T dQ E + E^T dQ A = -res; with dQ = E^{-T} dZ E^{-1} the
    // standard-form right-hand side is -res unchanged.
    q += recover(solve_standard_dual_sym(-0.5 * (res + res.transpose())));
  }
  throw ConvergenceFailure(
      "observability_gramian: residual contract not met after refinement");
}

Matrix PencilContext::cross_gramian(const PencilContext& full, const Matrix& b,
                                    const PencilContext& red,
                                    const Matrix& b_r) {
  if (b.rows() != full.order() || b_r.rows() != red.order() ||
      b.cols() != b_r.cols()) {
    throw DimensionMismatch("cross_gramian: input matrix shapes");
  }
  const Index n = full.order();
  const Index r = red.order();
  if (n == 0 || r == 0 || b.cols() == 0) return Matrix::Zero(n, r);
  full.require_stable("cross_gramian");
  red.require_stable("cross_gramian");

  const Matrix rhs = b * b_r.transpose();
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return Matrix::Zero(n, r);

  const Matrix f_std = full.solve_e(b);
  const Matrix g_std = red.solve_e(b_r);
  Matrix x = solve_standard_cross(full, red, -(f_std * g_std.transpose()));

  for (int it = 0; it <= kMaxRefinements; ++it) {
    const Matrix res = full.a_ * x * red.e_.transpose() +
                       full.e_ * x * red.a_.transpose() + rhs;
    if (res.norm() <= kLyapunovResidualTol * rhs_norm) return x;
    const Matrix res_std =
        red.solve_e(full.solve_e(res).transpose()).transpose();
    x += solve_standard_cross(full, red, -res_std);
  }
  throw ConvergenceFailure(
      "cross_gramian: residual contract not met after refinement");
}

Matrix solve_gen_lyapunov(const Matrix& e, const Matrix& a, const Matrix& f) {
  return PencilContext(e, a).controllability_gramian(f);
}

Matrix solve_gen_lyapunov_obs(const Matrix& e, const Matrix& a,
                              const Matrix& c) {
  return PencilContext(e, a).observability_gramian(c);
}

Matrix solve_sylvester_cross(const Matrix& e, const Matrix& a, const Matrix& b,
                             const Matrix& e_r, const Matrix& a_r,
                             const Matrix& b_r) {
  return PencilContext::cross_gramian(PencilContext(e, a), b,
                                      PencilContext(e_r, a_r), b_r);
}

namespace {

Matrix extract_block(const Matrix& p, bool upper_left, const char* op) {
  if (p.rows() != p.cols()) {
    throw DimensionMismatch(std::string(op) + ": square input required");
  }
  if (p.rows() % 2 != 0) {
    throw OddDimension(std::string(op) + ": dimension " +
                       std::to_string(p.rows()) + " is odd");
  }
  const Index n = p.rows() / 2;
  return upper_left ? p.topLeftCorner(n, n) : p.bottomRightCorner(n, n);
}

}  // namespace

Matrix extract_position_block(const Matrix& p) {
  return extract_block(p, true, "extract_position_block");
}

Matrix extract_velocity_obs_block(const Matrix& q) {
  return extract_block(q, false, "extract_velocity_obs_block");
}

GramianFactors controllability_factors(const SecondOrderSystem& sos,
                                       double rel_tol) {
  sos.require_stable("controllability_factors");
  const FirstOrderSystem fos = companion(sos);
  const PencilContext ctx(fos.e, fos.a);

  auto input_factor = [&](SubsystemTag tag) {
    const Matrix input = subsystem_input_matrix(sos, tag);
    const Matrix p = extract_position_block(ctx.controllability_gramian(input));
    return psd_lowrank_factor(p, rel_tol);
  };

  GramianFactors out;
  if (thread_budget() >= 2) {
    auto r_so = std::async(std::launch::async, input_factor, SubsystemTag::so);
    auto r_x0 = std::async(std::launch::async, input_factor, SubsystemTag::x0);
    auto r_v0 = std::async(std::launch::async, input_factor, SubsystemTag::v0);
    out.s = psd_lowrank_factor(
        extract_velocity_obs_block(ctx.observability_gramian(fos.c)), rel_tol);
    out.r_so = r_so.get();
    out.r_x0 = r_x0.get();
    out.r_v0 = r_v0.get();
  } else {
    out.r_so = input_factor(SubsystemTag::so);
    out.r_x0 = input_factor(SubsystemTag::x0);
    out.r_v0 = input_factor(SubsystemTag::v0);
    out.s = psd_lowrank_factor(
        extract_velocity_obs_block(ctx.observability_gramian(fos.c)), rel_tol);
  }
  return out;
}

Matrix combined_factor(const GramianFactors& f) {
  const Index n = f.r_so.rows();
  if (f.r_x0.rows() != n || f.r_v0.rows() != n) {
    throw DimensionMismatch("combined_factor: factor row counts differ");
  }
  Matrix combined(n, f.r_so.cols() + f.r_x0.cols() + f.r_v0.cols());
  combined << f.r_so, f.r_x0, f.r_v0;
  return combined;
}

}  // namespace somor
