#pragma once

#include <Eigen/LU>
#include <cmath>
#include <functional>
#include <random>

#include "somor/somor.hpp"

namespace somor_test {

using somor::Complex;
using somor::ComplexMatrix;
using somor::Index;
using somor::Matrix;
using somor::Vector;

inline Matrix random_dense(std::mt19937& rng, Index rows, Index cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(rng);
  }
  return out;
}

inline Matrix random_spd(std::mt19937& rng, Index n, double scale = 1.0) {
  const Matrix g = random_dense(rng, n, n);
  return scale * (g * g.transpose() / static_cast<double>(n) +
                  Matrix::Identity(n, n));
}

// SPD mass/stiffness with positive definite damping; such triples are always
// asymptotically stable.
inline somor::SecondOrderSystem random_stable_system(unsigned seed, Index n,
                                                     Index m, Index p,
                                                     Index nx0, Index nv0) {
  std::mt19937 rng(seed);
  const Matrix mass = random_spd(rng, n);
  const Matrix stiff = random_spd(rng, n);
  const Matrix damp = 0.1 * mass + 0.1 * stiff + random_spd(rng, n, 0.1);
  return somor::SecondOrderSystem(mass, damp, stiff, random_dense(rng, n, m),
                                  random_dense(rng, p, n),
                                  random_dense(rng, n, nx0),
                                  random_dense(rng, n, nv0));
}

namespace detail {

inline Matrix adaptive_simpson(const std::function<Matrix(double)>& g,
                               double a, double b, const Matrix& fa,
                               const Matrix& fm, const Matrix& fb,
                               const Matrix& whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  const Matrix flm = g(lm);
  const Matrix frm = g(rm);
  const Matrix left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Matrix right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
  const Matrix sum = left + right;
  if (depth <= 0 || (sum - whole).norm() <= 15.0 * tol) {
    return sum + (sum - whole) / 15.0;
  }
  return adaptive_simpson(g, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integral of f over the real line via the tan substitution and adaptive
// Simpson refinement; rel_tol is relative to the result's Frobenius norm.
inline Matrix integrate_real_line(const std::function<Matrix(double)>& f,
                                  double rel_tol) {
  auto g = [&](double theta) -> Matrix {
    const double t = std::tan(theta);
    return f(t) * (1.0 + t * t);
  };
  const double half_pi = std::acos(0.0);
  const double a = -half_pi + 1e-8;
  const double b = half_pi - 1e-8;
  const Matrix fa = g(a);
  const Matrix fb = g(b);
  const Matrix fm = g(0.5 * (a + b));
  const Matrix whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  double scale = std::max(whole.norm(), 1e-30);
  Matrix result =
      detail::adaptive_simpson(g, a, b, fa, fm, fb, whole, rel_tol * scale, 38);
  const double refined = std::max(result.norm(), 1e-30);
  if (refined > 10.0 * scale || refined < 0.1 * scale) {
    result = detail::adaptive_simpson(g, a, b, fa, fm, fb, whole,
                                      rel_tol * refined, 38);
  }
  return result;
}

// Resolvent-based input-to-state maps evaluated directly from the
// second-order matrices; the oracle path for Gramian cross-checks.
inline ComplexMatrix subsystem_state_map(const somor::SecondOrderSystem& sys,
                                         somor::SubsystemTag tag, double w) {
  const Complex s(0.0, w);
  ComplexMatrix pencil = s * s * sys.m().cast<Complex>() +
                         s * sys.d().cast<Complex>() +
                         sys.k().cast<Complex>();
  ComplexMatrix rhs;
  switch (tag) {
    case somor::SubsystemTag::so:
      rhs = sys.b().cast<Complex>();
      break;
    case somor::SubsystemTag::x0:
      rhs = (sys.d().cast<Complex>() + s * sys.m().cast<Complex>()) *
            sys.x0().cast<Complex>();
      break;
    case somor::SubsystemTag::v0:
      rhs = (sys.m() * sys.v0()).cast<Complex>();
      break;
  }
  return pencil.partialPivLu().solve(rhs);
}

// (1/2pi) integral of Re(R(iw) R(iw)^H) dw, the Lyapunov-normalized Gramian.
inline Matrix gramian_by_quadrature(const somor::SecondOrderSystem& sys,
                                    somor::SubsystemTag tag, double rel_tol) {
  auto integrand = [&](double w) -> Matrix {
    const ComplexMatrix r = subsystem_state_map(sys, tag, w);
    return (r * r.adjoint()).real();
  };
  const double two_pi = 4.0 * std::acos(0.0);
  return integrate_real_line(integrand, rel_tol) / two_pi;
}

// Transfer function H(iw) = C (iw E - A)^{-1} B evaluated with a plain
// complex solve (oracle path).
inline ComplexMatrix transfer_at(const somor::FirstOrderSystem& fos,
                                 double w) {
  if (fos.order() == 0) {
    return ComplexMatrix::Zero(fos.num_outputs(), fos.num_inputs());
  }
  const Complex s(0.0, w);
  ComplexMatrix pencil = s * fos.e.cast<Complex>() - fos.a.cast<Complex>();
  return fos.c.cast<Complex>() *
         pencil.partialPivLu().solve(fos.b.cast<Complex>());
}

// sqrt of (1/2pi) integral of ||H(iw) - H_r(iw)||_F^2 dw.
inline double h2_distance_by_quadrature(const somor::FirstOrderSystem& full,
                                        const somor::FirstOrderSystem& red,
                                        double rel_tol) {
  auto integrand = [&](double w) -> Matrix {
    const ComplexMatrix diff = transfer_at(full, w) - transfer_at(red, w);
    Matrix out(1, 1);
    out(0, 0) = diff.squaredNorm();
    return out;
  };
  const double two_pi = 4.0 * std::acos(0.0);
  return std::sqrt(integrate_real_line(integrand, rel_tol)(0, 0) / two_pi);
}

inline double relative_error(const Matrix& actual, const Matrix& expected) {
  const double denom = expected.norm();
  return denom == 0.0 ? actual.norm() : (actual - expected).norm() / denom;
}

}  // namespace somor_test
