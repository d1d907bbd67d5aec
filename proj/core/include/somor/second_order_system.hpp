#pragma once

#include <optional>

#include "somor/matrix_kernels.hpp"

namespace somor {

// Selects one of the three superposition subsystems: the input-to-output
// map, the initial-position map, or the initial-velocity map.
enum class SubsystemTag { so, x0, v0 };

const char* to_string(SubsystemTag tag);

// E z' = A z + B u, y = C z.
struct FirstOrderSystem {
  Matrix e;  // N x N, nonsingular
  Matrix a;  // N x N
  Matrix b;  // N x m'
  Matrix c;  // p x N

  Index order() const { return e.rows(); }
  Index num_inputs() const { return b.cols(); }
  Index num_outputs() const { return c.rows(); }
};

// M x'' + D x' + K x = B u, y = C x, with initial data confined to
// x(0) = X0 z0 and x'(0) = V0 w0. Immutable after construction.
class SecondOrderSystem {
 public:
  enum class StabilityPolicy {
    check_eagerly,  // compute the spectral abscissa now, throw if unstable
    defer           // skip; simulation does not need it
  };

  SecondOrderSystem(Matrix m, Matrix d, Matrix k, Matrix b, Matrix c,
                    Matrix x0, Matrix v0,
                    StabilityPolicy policy = StabilityPolicy::check_eagerly);

  Index dim() const { return m_.rows(); }
  Index num_inputs() const { return b_.cols(); }
  Index num_outputs() const { return c_.rows(); }
  Index x0_cols() const { return x0_.cols(); }
  Index v0_cols() const { return v0_.cols(); }

  const Matrix& m() const { return m_; }
  const Matrix& d() const { return d_; }
  const Matrix& k() const { return k_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }
  const Matrix& x0() const { return x0_; }
  const Matrix& v0() const { return v0_; }

  // Largest real part over the quadratic pencil spectrum. Cached when the
  // construction policy computed it, recomputed otherwise.
  double spectral_abscissa() const;
  bool stable() const { return spectral_abscissa() < 0.0; }
  void require_stable(const char* op) const;

 private:
  Matrix m_, d_, k_, b_, c_, x0_, v0_;
  std::optional<double> abscissa_;
};

// Companion realization E = [[I,0],[0,M]], A = [[0,I],[-K,-D]],
// B = [0; B], C = [C, 0]. Satisfies
// C_fo (s E - A)^{-1} B_fo = C (s^2 M + s D + K)^{-1} B.
FirstOrderSystem companion(const SecondOrderSystem& sos);

// [0; B] for so, [X0; 0] for x0, [0; M V0] for v0 (2n rows).
Matrix subsystem_input_matrix(const SecondOrderSystem& sos, SubsystemTag tag);

// Companion pencil with the tag's input matrix and output [C, 0]; its
// transfer function is the tagged map (the x0 tag picks up the (D + s M)
// factor through the pencil structure).
FirstOrderSystem companion_for_tag(const SecondOrderSystem& sos,
                                   SubsystemTag tag);

// Value of the tagged transfer function at s:
//   so: C L(s) B,  x0: C L(s) (D + s M) X0,  v0: C L(s) M V0,
// with L(s) = (s^2 M + s D + K)^{-1}. Throws SingularPencil when L(s)
// does not exist.
ComplexMatrix eval_transfer(const SecondOrderSystem& sos, SubsystemTag tag,
                            Complex s);

// H(s) = C (s E - A)^{-1} B.
ComplexMatrix eval_transfer(const FirstOrderSystem& fos, Complex s);

struct StabilityReport {
  bool stable;
  double spectral_abscissa;
};

// Stability of the pencil A - lambda E via the eigenvalues of E^{-1} A.
StabilityReport stability_check(const FirstOrderSystem& fos);

// Largest real part of the pencil spectrum without inverting E; returns
// +infinity when the pencil has eigenvalues at infinity (singular E).
double pencil_abscissa(const Matrix& e, const Matrix& a);

}  // namespace somor
