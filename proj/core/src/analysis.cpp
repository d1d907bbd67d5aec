#include "somor/analysis.hpp"

#include <cmath>
#include <string>

namespace somor {

namespace {

constexpr double kTraceNegativityFloor = -1e-10;

double sqrt_clamped(double expr) {
  if (expr < kTraceNegativityFloor) {
    throw NumericalInconsistency(
        "h2_error: trace expression is negative beyond round-off (" +
        std::to_string(expr) + ")");
  }
  return std::sqrt(std::max(expr, 0.0));
}

// Trace-formula H2 distance over prebuilt pencil contexts.
double h2_error_impl(const PencilContext& full, const Matrix& b,
                     const Matrix& c, const PencilContext& red,
                     const Matrix& b_r, const Matrix& c_r) {
  if (c.rows() != c_r.rows()) {
    throw DimensionMismatch("h2_error: output dimensions differ");
  }
  if (b.cols() != b_r.cols()) {
    throw DimensionMismatch("h2_error: input dimensions differ");
  }
  double expr = 0.0;
  if (full.order() > 0) {
    expr += (c * full.controllability_gramian(b) * c.transpose()).trace();
  }
  if (red.order() > 0) {
    expr += (c_r * red.controllability_gramian(b_r) * c_r.transpose()).trace();
  }
  if (full.order() > 0 && red.order() > 0) {
    const Matrix cross = PencilContext::cross_gramian(full, b, red, b_r);
    expr -= 2.0 * (c * cross * c_r.transpose()).trace();
  }
  return sqrt_clamped(expr);
}

Matrix stacked_companion_input(const SecondOrderSystem& sos) {
  const Matrix b_so = subsystem_input_matrix(sos, SubsystemTag::so);
  const Matrix b_x0 = subsystem_input_matrix(sos, SubsystemTag::x0);
  const Matrix b_v0 = subsystem_input_matrix(sos, SubsystemTag::v0);
  Matrix stacked(b_so.rows(), b_so.cols() + b_x0.cols() + b_v0.cols());
  stacked << b_so, b_x0, b_v0;
  return stacked;
}

void check_amplitudes(const SecondOrderSystem& sos, double u_hinf,
                      const Vector& z0, const Vector& w0) {
  if (u_hinf < 0.0) {
    throw InvalidParameter("bound: negative input amplitude");
  }
  if (z0.size() != sos.x0_cols()) {
    throw DimensionMismatch("bound: z0 vs X0 column counts");
  }
  if (w0.size() != sos.v0_cols()) {
    throw DimensionMismatch("bound: w0 vs V0 column counts");
  }
}

}  // namespace

double h2_error(const FirstOrderSystem& full, const FirstOrderSystem& red) {
  const PencilContext full_ctx(full.e, full.a);
  const PencilContext red_ctx(red.e, red.a);
  return h2_error_impl(full_ctx, full.b, full.c, red_ctx, red.b, red.c);
}

double hinf_exp_input(double alpha, double beta) {
  if (!(beta < 0.0)) {
    throw NonDecayingInput("hinf_exp_input: decay rate must be negative");
  }
  return std::abs(alpha) / std::abs(beta);
}

ErrorBoundReport bound_split(const SecondOrderSystem& sos,
                             const SplitReduction& split, double u_hinf,
                             const Vector& z0, const Vector& w0) {
  check_amplitudes(sos, u_hinf, z0, w0);
  sos.require_stable("bound_split");

  const FirstOrderSystem fos = companion(sos);
  const PencilContext full_ctx(fos.e, fos.a);

  auto tag_term = [&](const ReducedModel& rom, SubsystemTag tag) {
    const SecondOrderSystem red_sos = rom.to_second_order();
    const FirstOrderSystem red_fos = companion_for_tag(red_sos, tag);
    const PencilContext red_ctx(red_fos.e, red_fos.a);
    return h2_error_impl(full_ctx, subsystem_input_matrix(sos, tag), fos.c,
                         red_ctx, red_fos.b, red_fos.c);
  };

  ErrorBoundReport report;
  report.input_hinf = u_hinf;
  report.z0_norm = z0.norm();
  report.w0_norm = w0.norm();
  report.h2_so = tag_term(split.rom_so, SubsystemTag::so);
  report.h2_x0 = tag_term(split.rom_x0, SubsystemTag::x0);
  report.h2_v0 = tag_term(split.rom_v0, SubsystemTag::v0);
  report.total = *report.h2_so * report.input_hinf +
                 *report.h2_x0 * report.z0_norm +
                 *report.h2_v0 * report.w0_norm;
  return report;
}

ErrorBoundReport bound_combined(const SecondOrderSystem& sos,
                                const ReducedModel& rom, double u_hinf,
                                const Vector& z0, const Vector& w0) {
  check_amplitudes(sos, u_hinf, z0, w0);
  sos.require_stable("bound_combined");
  if (rom.x0.cols() != sos.x0_cols() || rom.v0.cols() != sos.v0_cols()) {
    throw DimensionMismatch("bound_combined: reduced model does not carry the "
                            "system's initial-condition bases");
  }

  const FirstOrderSystem fos = companion(sos);
  const PencilContext full_ctx(fos.e, fos.a);
  const SecondOrderSystem red_sos = rom.to_second_order();
  const FirstOrderSystem red_fos = companion(red_sos);
  const PencilContext red_ctx(red_fos.e, red_fos.a);

  ErrorBoundReport report;
  report.input_hinf = u_hinf;
  report.z0_norm = z0.norm();
  report.w0_norm = w0.norm();
  report.h2_combined =
      h2_error_impl(full_ctx, stacked_companion_input(sos), fos.c, red_ctx,
                    stacked_companion_input(red_sos), red_fos.c);
  report.total = *report.h2_combined *
                 (report.input_hinf + report.z0_norm + report.w0_norm);
  return report;
}

HankelReport hankel_report(const GramianFactors& factors) {
  auto values = [&](const Matrix& r) {
    if (r.cols() == 0 || factors.s.cols() == 0) return Vector(0);
    return svd_decompose(factors.s.transpose() * r).sigma;
  };
  HankelReport report;
  report.so = values(factors.r_so);
  report.x0 = values(factors.r_x0);
  report.v0 = values(factors.r_v0);
  report.combined = values(combined_factor(factors));
  return report;
}

}  // namespace somor
