#pragma once

#include <Eigen/LU>

#include "somor/second_order_system.hpp"

namespace somor {

// Relative residual demanded of every accepted Lyapunov/Sylvester solution.
inline constexpr double kLyapunovResidualTol = 1e-10;

// Low-rank factors of the three controllability Gramians and the shared
// observability Gramian: P_* ~= R_* R_*^T and Q ~= S S^T.
struct GramianFactors {
  Matrix r_so;  // n x k1
  Matrix r_x0;  // n x k2
  Matrix r_v0;  // n x k3
  Matrix s;     // n x k4
};

// Schur machinery for one stable pencil (E, A), reusable across solves.
// All solves are transformed to standard form with E^{-1} A and handled by
// Bartels-Stewart back-substitution on the real Schur form; the residual of
// the generalized equation is checked and refined until it meets
// kLyapunovResidualTol.
class PencilContext {
 public:
  PencilContext(Matrix e, Matrix a);

  Index order() const { return e_.rows(); }
  const Matrix& e() const { return e_; }
  const Matrix& a() const { return a_; }
  double spectral_abscissa() const { return abscissa_; }
  bool stable() const { return abscissa_ < 0.0; }

  // P with A P E^T + E P A^T + F F^T = 0 (symmetric).
  Matrix controllability_gramian(const Matrix& f) const;

  // Q with A^T Q E + E^T Q A + C^T C = 0, recovered as E^{-T} Z E^{-1}
  // from the standard-form solution Z.
  Matrix observability_gramian(const Matrix& c) const;

  // Cross solution X (full.order() x red.order()) of
  // A X E_r^T + E X A_r^T + B B_r^T = 0.
  static Matrix cross_gramian(const PencilContext& full, const Matrix& b,
                              const PencilContext& red, const Matrix& b_r);

 private:
  void require_stable(const char* op) const;
  Matrix solve_e(const Matrix& rhs) const;            // E^{-1} rhs
  Matrix solve_e_transposed(const Matrix& rhs) const; // E^{-T} rhs
  Matrix solve_standard_sym(const Matrix& s) const;
  Matrix solve_standard_dual_sym(const Matrix& s) const;
  static Matrix solve_standard_cross(const PencilContext& full,
                                     const PencilContext& red,
                                     const Matrix& s);

  Matrix e_, a_;
  Eigen::PartialPivLU<Matrix> e_lu_;
  Vector balance_;     // diagonal balancing of E^{-1} A
  SchurResult schur_;  // of the balanced E^{-1} A
  double abscissa_;
};

// One-shot wrappers around PencilContext.
Matrix solve_gen_lyapunov(const Matrix& e, const Matrix& a, const Matrix& f);
Matrix solve_gen_lyapunov_obs(const Matrix& e, const Matrix& a,
                              const Matrix& c);
Matrix solve_sylvester_cross(const Matrix& e, const Matrix& a, const Matrix& b,
                             const Matrix& e_r, const Matrix& a_r,
                             const Matrix& b_r);

// Upper-left n x n block of a 2n x 2n matrix. Throws OddDimension.
Matrix extract_position_block(const Matrix& p);

// Lower-right n x n block of a 2n x 2n matrix. Throws OddDimension.
Matrix extract_velocity_obs_block(const Matrix& q);

// Low-rank factors of the subsystem Gramians of a stable system: for each
// tag the companion Lyapunov solution with that tag's input matrix, position
// block extracted and factored; S factors the velocity block of the shared
// observability Gramian. Empty X0/V0 yield zero-column factors. The three
// controllability solves run concurrently when the thread budget allows.
GramianFactors controllability_factors(const SecondOrderSystem& sos,
                                       double rel_tol = kGramianFactorTol);

// [R_so, R_x0, R_v0]; its Gram product is P_so + P_x0 + P_v0 exactly.
Matrix combined_factor(const GramianFactors& f);

}  // namespace somor
