#include "somor/simulate.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>
#include <utility>

namespace somor {

TimeGrid::TimeGrid(double t0_in, double t_end_in, double h_in)
    : t0(t0_in), t_end(t_end_in), h(h_in) {
  if (!(h > 0.0)) throw InvalidParameter("TimeGrid: step must be positive");
  if (!(t_end > t0)) throw InvalidParameter("TimeGrid: t_end must exceed t0");
  const double raw = (t_end - t0) / h;
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, raw)) {
    throw InvalidParameter("TimeGrid: span is not a whole number of steps");
  }
  steps_ = static_cast<Index>(rounded);
}

InputSignal InputSignal::zero(Index channels) {
  if (channels < 0) throw InvalidParameter("InputSignal: negative channels");
  InputSignal u;
  u.kind_ = Kind::zero;
  u.channels_ = channels;
  return u;
}

InputSignal InputSignal::exponential(double alpha, double beta,
                                     Index channels) {
  if (channels < 0) throw InvalidParameter("InputSignal: negative channels");
  InputSignal u;
  u.kind_ = Kind::exponential;
  u.channels_ = channels;
  u.alpha_ = alpha;
  u.beta_ = beta;
  return u;
}

InputSignal InputSignal::tabulated(const TimeGrid& grid, Matrix samples) {
  if (samples.cols() != grid.num_points()) {
    throw DimensionMismatch("InputSignal: samples vs grid points");
  }
  check_finite(samples, "tabulated input");
  InputSignal u;
  u.kind_ = Kind::tabulated;
  u.channels_ = samples.rows();
  u.fn_ = [grid, samples = std::move(samples)](double t) -> Vector {
    if (t <= grid.t0) return samples.col(0);
    if (t >= grid.t_end) return samples.col(samples.cols() - 1);
    const double pos = (t - grid.t0) / grid.h;
    const Index k = std::min<Index>(static_cast<Index>(pos), grid.steps() - 1);
    const double w = pos - static_cast<double>(k);
    return (1.0 - w) * samples.col(k) + w * samples.col(k + 1);
  };
  return u;
}

double InputSignal::alpha() const {
  if (kind_ != Kind::exponential) {
    throw InvalidParameter("InputSignal: alpha only defined for exponential");
  }
  return alpha_;
}

double InputSignal::beta() const {
  if (kind_ != Kind::exponential) {
    throw InvalidParameter("InputSignal: beta only defined for exponential");
  }
  return beta_;
}

Vector InputSignal::eval(double t) const {
  switch (kind_) {
    case Kind::zero:
      return Vector::Zero(channels_);
    case Kind::exponential:
      return Vector::Constant(channels_, alpha_ * std::exp(beta_ * t));
    case Kind::tabulated:
      return fn_(t);
  }
  throw InvalidParameter("InputSignal: unknown kind");
}

Trajectory simulate(const Matrix& m, const Matrix& d, const Matrix& k,
                    const Matrix& b, const Matrix& c, const Vector& x_init,
                    const Vector& v_init, const InputSignal& u,
                    const TimeGrid& grid) {
  const Index n = m.rows();
  if (x_init.size() != n || v_init.size() != n) {
    throw DimensionMismatch("simulate: initial vectors vs system dimension");
  }
  if (u.channels() != b.cols()) {
    throw DimensionMismatch("simulate: input channels vs B columns");
  }
  const Index p = c.rows();
  Trajectory traj{grid, Matrix::Zero(p, grid.num_points())};
  if (n == 0) return traj;

  // Companion form with z = [x; x'].
  const Index nn = 2 * n;
  Matrix e = Matrix::Zero(nn, nn);
  e.topLeftCorner(n, n).setIdentity();
  e.bottomRightCorner(n, n) = m;
  Matrix a = Matrix::Zero(nn, nn);
  a.topRightCorner(n, n).setIdentity();
  a.bottomLeftCorner(n, n) = -k;
  a.bottomRightCorner(n, n) = -d;

  const double half_h = 0.5 * grid.h;
  const Matrix lhs = e - half_h * a;
  const Matrix rhs_mat = e + half_h * a;
  Eigen::PartialPivLU<Matrix> lu(lhs);
  if (!(lu.rcond() > kRcondFloor)) {
    throw SingularStepMatrix("simulate: E - h/2 A is numerically singular");
  }

  Vector z(nn);
  z.head(n) = x_init;
  z.tail(n) = v_init;
  traj.samples.col(0) = c * z.head(n);

  Vector u_prev = u.eval(grid.time(0));
  Vector rhs(nn);
  for (Index step = 1; step <= grid.steps(); ++step) {
    const Vector u_next = u.eval(grid.time(step));
    rhs.noalias() = rhs_mat * z;
    rhs.tail(n).noalias() += half_h * (b * (u_prev + u_next));
    z = lu.solve(rhs);
    traj.samples.col(step) = c * z.head(n);
    u_prev = u_next;
  }
  if (!traj.samples.allFinite()) {
    throw NumericalInconsistency("simulate: non-finite output samples");
  }
  return traj;
}

Trajectory simulate(const SecondOrderSystem& sos, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid) {
  if (z0.size() != sos.x0_cols()) {
    throw DimensionMismatch("simulate: z0 vs X0 column counts");
  }
  if (w0.size() != sos.v0_cols()) {
    throw DimensionMismatch("simulate: w0 vs V0 column counts");
  }
  return simulate(sos.m(), sos.d(), sos.k(), sos.b(), sos.c(), sos.x0() * z0,
                  sos.v0() * w0, u, grid);
}

Trajectory simulate(const ReducedModel& rom, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid) {
  if (z0.size() != rom.x0.cols()) {
    throw DimensionMismatch("simulate: z0 vs reduced X0 column counts");
  }
  if (w0.size() != rom.v0.cols()) {
    throw DimensionMismatch("simulate: w0 vs reduced V0 column counts");
  }
  return simulate(rom.m, rom.d, rom.k, rom.b, rom.c, rom.x0 * z0, rom.v0 * w0,
                  u, grid);
}

Trajectory simulate(const SplitReduction& split, const InputSignal& u,
                    const Vector& z0, const Vector& w0, const TimeGrid& grid) {
  const InputSignal zero_u = InputSignal::zero(u.channels());
  const Trajectory y_so =
      simulate(split.rom_so, u, Vector(0), Vector(0), grid);
  const Trajectory y_x0 =
      simulate(split.rom_x0, zero_u, z0, Vector(0), grid);
  const Trajectory y_v0 =
      simulate(split.rom_v0, zero_u, Vector(0), w0, grid);
  return superpose(y_so, y_x0, y_v0);
}

namespace {

void check_same_grid(const Trajectory& a, const Trajectory& b,
                     const char* op) {
  if (!(a.grid == b.grid)) {
    throw GridMismatch(std::string(op) + ": time grids differ");
  }
  if (a.num_outputs() != b.num_outputs()) {
    throw GridMismatch(std::string(op) + ": output dimensions differ");
  }
}

}  // namespace

Trajectory superpose(const Trajectory& y_so, const Trajectory& y_x0,
                     const Trajectory& y_v0) {
  check_same_grid(y_so, y_x0, "superpose");
  check_same_grid(y_so, y_v0, "superpose");
  return {y_so.grid, y_so.samples + y_x0.samples + y_v0.samples};
}

Trajectory l2_error_integral(const Trajectory& y, const Trajectory& y_hat) {
  check_same_grid(y, y_hat, "l2_error_integral");
  const Index points = y.grid.num_points();
  Trajectory running{y.grid, Matrix::Zero(1, points)};
  double integral = 0.0;
  double prev = (y.samples.col(0) - y_hat.samples.col(0)).squaredNorm();
  running.samples(0, 0) = 0.0;
  for (Index kk = 1; kk < points; ++kk) {
    const double cur = (y.samples.col(kk) - y_hat.samples.col(kk)).squaredNorm();
    integral += 0.5 * y.grid.h * (prev + cur);
    running.samples(0, kk) = std::sqrt(integral);
    prev = cur;
  }
  return running;
}

}  // namespace somor
