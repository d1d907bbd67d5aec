#pragma once

#include <functional>

#include "somor/reduction.hpp"

namespace somor {

// Uniform grid t0, t0 + h, ..., t_end. The span must be a whole number of
// steps.
struct TimeGrid {
  TimeGrid(double t0, double t_end, double h);

  double t0;
  double t_end;
  double h;

  Index steps() const { return steps_; }
  Index num_points() const { return steps_ + 1; }
  double time(Index k) const { return t0 + static_cast<double>(k) * h; }

  bool operator==(const TimeGrid& other) const {
    return t0 == other.t0 && t_end == other.t_end && h == other.h;
  }

 private:
  Index steps_;
};

// Input signal u(t) with a declared closed form so downstream machinery can
// derive frequency-domain data for exponential inputs.
class InputSignal {
 public:
  enum class Kind { zero, exponential, tabulated };

  static InputSignal zero(Index channels = 1);
  // u_i(t) = alpha * exp(beta * t) on every channel.
  static InputSignal exponential(double alpha, double beta,
                                 Index channels = 1);
  // Piecewise-linear interpolation of per-point samples (channels x points).
  static InputSignal tabulated(const TimeGrid& grid, Matrix samples);

  Kind kind() const { return kind_; }
  Index channels() const { return channels_; }
  double alpha() const;
  double beta() const;
  Vector eval(double t) const;

 private:
  InputSignal() = default;
  Kind kind_ = Kind::zero;
  Index channels_ = 1;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::function<Vector(double)> fn_;
};

struct Trajectory {
  TimeGrid grid;
  Matrix samples;  // p x num_points

  Index num_outputs() const { return samples.rows(); }
};

// Integrates M x'' + D x' + K x = B u(t), y = C x with the given initial
// position/velocity vectors using the implicit trapezoidal rule on the
// companion form; one factorization of (E - h/2 A) is reused for all steps.
Trajectory simulate(const Matrix& m, const Matrix& d, const Matrix& k,
                    const Matrix& b, const Matrix& c, const Vector& x_init,
                    const Vector& v_init, const InputSignal& u,
                    const TimeGrid& grid);

// Initial data from the basis coefficients: x(0) = X0 z0, x'(0) = V0 w0.
Trajectory simulate(const SecondOrderSystem& sos, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid);

Trajectory simulate(const ReducedModel& rom, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid);

// y_so with the input, y_x0 with z0, y_v0 with w0, superposed.
Trajectory simulate(const SplitReduction& split, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid);

// Pointwise sum of three outputs on one grid.
Trajectory superpose(const Trajectory& y_so, const Trajectory& y_x0,
                     const Trajectory& y_v0);

// Running sqrt of the trapezoidal cumulative integral of ||y - y_hat||_2^2;
// scalar-valued, nondecreasing.
Trajectory l2_error_integral(const Trajectory& y, const Trajectory& y_hat);

}  // namespace somor
