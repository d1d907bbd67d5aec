#pragma once

#include <optional>

#include "somor/reduction.hpp"

namespace somor {

// A posteriori L2 output-error bound data. total is the sum of the H2 terms
// weighted by their amplitude factors.
struct ErrorBoundReport {
  std::optional<double> h2_so;
  std::optional<double> h2_x0;
  std::optional<double> h2_v0;
  std::optional<double> h2_combined;
  double input_hinf = 0.0;
  double z0_norm = 0.0;
  double w0_norm = 0.0;
  double total = 0.0;
};

struct HankelReport {
  Vector so;
  Vector x0;
  Vector v0;
  Vector combined;
};

// ||H_full - H_red||_H2 through the Gramian trace formula
//   trace(C P C^T) - 2 trace(C X C_r^T) + trace(C_r P_r C_r^T)
// with the controllability Gramians P, P_r and the cross solution X. The
// result is sqrt(max(0, .)); negativity beyond -1e-10 raises
// NumericalInconsistency.
double h2_error(const FirstOrderSystem& full, const FirstOrderSystem& red);

// H-infinity norm of the Laplace transform of u(t) = alpha * exp(beta t),
// namely |alpha| / |beta|. Throws NonDecayingInput for beta >= 0.
double hinf_exp_input(double alpha, double beta);

// ||y - y_hat||_L2 <= ||H_so - H_so_r|| * u_hinf + ||H_x0 - H_x0_r|| * ||z0||
//                   + ||H_v0 - H_v0_r|| * ||w0||,
// every term an H2 error between the tag's companion realizations of the
// full system and the matching reduced model.
ErrorBoundReport bound_split(const SecondOrderSystem& sos,
                             const SplitReduction& split, double u_hinf,
                             const Vector& z0, const Vector& w0);

// Single-term variant over the stacked companion input
// [0, X0, 0; B, 0, M V0] and its reduced counterpart, weighted by
// u_hinf + ||z0|| + ||w0||.
ErrorBoundReport bound_combined(const SecondOrderSystem& sos,
                                const ReducedModel& rom, double u_hinf,
                                const Vector& z0, const Vector& w0);

// Singular values of S^T R_tag per tag and of S^T [R_so, R_x0, R_v0].
HankelReport hankel_report(const GramianFactors& factors);

}  // namespace somor
