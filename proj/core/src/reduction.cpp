#include "somor/reduction.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace somor {

OrderSpec OrderSpec::fixed(Index r) {
  if (r < 0) throw InvalidParameter("OrderSpec: negative order");
  OrderSpec spec;
  spec.fixed_ = r;
  return spec;
}

OrderSpec OrderSpec::tolerance(double rel_tol) {
  if (!(rel_tol > 0.0) || !(rel_tol <= 1.0)) {
    throw InvalidParameter("OrderSpec: tolerance must lie in (0, 1]");
  }
  OrderSpec spec;
  spec.rel_tol_ = rel_tol;
  return spec;
}

Index OrderSpec::fixed_order() const {
  if (!fixed_) throw InvalidParameter("OrderSpec: not a fixed order");
  return *fixed_;
}

double OrderSpec::rel_tol() const {
  if (fixed_) throw InvalidParameter("OrderSpec: not a tolerance");
  return rel_tol_;
}

Index order_from_tolerance(const Vector& sigma, double rel_tol) {
  if (sigma.size() == 0) {
    throw EmptySpectrum("order_from_tolerance: empty singular value vector");
  }
  if (!(sigma(0) > 0.0)) {
    throw EmptySpectrum("order_from_tolerance: leading singular value is zero");
  }
  const double cut = rel_tol * sigma(0);
  Index r = 0;
  while (r < sigma.size() && sigma(r) >= cut) ++r;
  return r;
}

const char* to_string(RomKind kind) {
  switch (kind) {
    case RomKind::homogeneous:
      return "homogeneous";
    case RomKind::split_so:
      return "split_so";
    case RomKind::split_x0:
      return "split_x0";
    case RomKind::split_v0:
      return "split_v0";
    case RomKind::combined:
      return "combined";
  }
  return "?";
}

Projection bt_project(const Matrix& s, const Matrix& r,
                      const OrderSpec& order) {
  if (s.rows() != r.rows()) {
    throw DimensionMismatch("bt_project: S vs R row counts");
  }
  const Matrix cross = s.transpose() * r;
  const SvdResult svd = svd_decompose(cross);
  if (svd.sigma.size() == 0 || !(svd.sigma(0) > 0.0)) {
    throw RankDeficient("bt_project: S^T R is zero");
  }
  Index rank = 0;
  while (rank < svd.sigma.size() &&
         svd.sigma(rank) > svd.sigma(0) * kProjectionRankTol) {
    ++rank;
  }
  Index rr;
  if (order.is_fixed()) {
    rr = order.fixed_order();
    if (rr > rank) {
      throw RankDeficient("bt_project: requested order " + std::to_string(rr) +
                          " exceeds numerical rank " + std::to_string(rank) +
                          " of S^T R");
    }
  } else {
    rr = std::min(order_from_tolerance(svd.sigma, order.rel_tol()), rank);
  }

  Projection proj;
  proj.sigma = svd.sigma.head(rr);
  const Vector inv_sqrt = proj.sigma.array().rsqrt();
  proj.w = s * svd.u.leftCols(rr) * inv_sqrt.asDiagonal();
  proj.v = r * svd.x.leftCols(rr) * inv_sqrt.asDiagonal();
  return proj;
}

SecondOrderSystem ReducedModel::to_second_order() const {
  return SecondOrderSystem(m, d, k, b, c, x0, v0,
                           SecondOrderSystem::StabilityPolicy::defer);
}

namespace {

ReducedModel project_model(const SecondOrderSystem& sos, const Projection& pr,
                           RomKind kind, bool carry_x0, bool carry_v0) {
  ReducedModel rom;
  rom.kind = kind;
  rom.m = pr.w.transpose() * sos.m() * pr.v;
  rom.d = pr.w.transpose() * sos.d() * pr.v;
  rom.k = pr.w.transpose() * sos.k() * pr.v;
  rom.b = pr.w.transpose() * sos.b();
  rom.c = sos.c() * pr.v;
  const Index r = pr.w.cols();
  rom.x0 = carry_x0 ? (pr.w.transpose() * sos.x0()).eval()
                    : Matrix::Zero(r, 0);
  rom.v0 = carry_v0 ? (pr.w.transpose() * sos.v0()).eval()
                    : Matrix::Zero(r, 0);
  rom.retained_sigma = pr.sigma;
  rom.proj_w = pr.w;
  rom.proj_v = pr.v;

  // BT for second-order systems has no stability guarantee; record, don't
  // reject.
  Matrix e = Matrix::Zero(2 * r, 2 * r);
  e.topLeftCorner(r, r).setIdentity();
  e.bottomRightCorner(r, r) = rom.m;
  Matrix a = Matrix::Zero(2 * r, 2 * r);
  a.topRightCorner(r, r).setIdentity();
  a.bottomLeftCorner(r, r) = -rom.k;
  a.bottomRightCorner(r, r) = -rom.d;
  rom.spectral_abscissa = pencil_abscissa(e, a);
  rom.stable = rom.spectral_abscissa < 0.0;
  return rom;
}

ReducedModel empty_model(const SecondOrderSystem& sos, RomKind kind,
                         bool carry_x0, bool carry_v0) {
  ReducedModel rom;
  rom.kind = kind;
  rom.m = rom.d = rom.k = Matrix(0, 0);
  rom.b = Matrix(0, sos.num_inputs());
  rom.c = Matrix(sos.num_outputs(), 0);
  rom.x0 = Matrix(0, carry_x0 ? sos.x0_cols() : 0);
  rom.v0 = Matrix(0, carry_v0 ? sos.v0_cols() : 0);
  rom.retained_sigma = Vector(0);
  rom.proj_w = rom.proj_v = Matrix(sos.dim(), 0);
  rom.stable = true;
  rom.spectral_abscissa = -std::numeric_limits<double>::infinity();
  return rom;
}

}  // namespace

SplitReduction reduce_split(const SecondOrderSystem& sos,
                            const GramianFactors& factors,
                            const SplitOrders& orders) {
  auto reduce_tag = [&](const Matrix& r_tag, const OrderSpec& order,
                        RomKind kind, bool carry_x0, bool carry_v0) {
    if (r_tag.cols() == 0) return empty_model(sos, kind, carry_x0, carry_v0);
    const Projection pr = bt_project(factors.s, r_tag, order);
    return project_model(sos, pr, kind, carry_x0, carry_v0);
  };
  SplitReduction split;
  split.rom_so =
      reduce_tag(factors.r_so, orders.so, RomKind::split_so, false, false);
  split.rom_x0 =
      reduce_tag(factors.r_x0, orders.x0, RomKind::split_x0, true, false);
  split.rom_v0 =
      reduce_tag(factors.r_v0, orders.v0, RomKind::split_v0, false, true);
  return split;
}

ReducedModel reduce_combined(const SecondOrderSystem& sos,
                             const GramianFactors& factors,
                             const OrderSpec& order) {
  const Matrix r_c = combined_factor(factors);
  if (r_c.cols() == 0) return empty_model(sos, RomKind::combined, true, true);
  const Projection pr = bt_project(factors.s, r_c, order);
  return project_model(sos, pr, RomKind::combined, true, true);
}

ReducedModel reduce_homogeneous(const SecondOrderSystem& sos,
                                const GramianFactors& factors,
                                const OrderSpec& order) {
  if (factors.r_so.cols() == 0) {
    return empty_model(sos, RomKind::homogeneous, true, true);
  }
  const Projection pr = bt_project(factors.s, factors.r_so, order);
  return project_model(sos, pr, RomKind::homogeneous, true, true);
}

ReducedModel reduce_homogeneous(const SecondOrderSystem& sos,
                                const OrderSpec& order, double factor_tol) {
  sos.require_stable("reduce_homogeneous");
  const FirstOrderSystem fos = companion(sos);
  const PencilContext ctx(fos.e, fos.a);
  GramianFactors factors;
  factors.r_so = psd_lowrank_factor(
      extract_position_block(
          ctx.controllability_gramian(subsystem_input_matrix(sos, SubsystemTag::so))),
      factor_tol);
  factors.s = psd_lowrank_factor(
      extract_velocity_obs_block(ctx.observability_gramian(fos.c)), factor_tol);
  factors.r_x0 = Matrix(sos.dim(), 0);
  factors.r_v0 = Matrix(sos.dim(), 0);
  return reduce_homogeneous(sos, factors, order);
}

}  // namespace somor
