#pragma once

#include <optional>

#include "somor/gramians.hpp"

namespace somor {

// Singular values below sigma_1 * kProjectionRankTol do not support a
// balancing projection (Sigma^{-1/2} would blow up).
inline constexpr double kProjectionRankTol = 1e-14;

// Target order for a reduction: an explicit dimension or a relative
// singular-value cutoff.
class OrderSpec {
 public:
  static OrderSpec fixed(Index r);
  static OrderSpec tolerance(double rel_tol);

  bool is_fixed() const { return fixed_.has_value(); }
  Index fixed_order() const;
  double rel_tol() const;

 private:
  OrderSpec() = default;
  std::optional<Index> fixed_;
  double rel_tol_ = 0.0;
};

// r = #{i : sigma_i >= rel_tol * sigma_1}; the boundary value is kept.
Index order_from_tolerance(const Vector& sigma, double rel_tol);

struct Projection {
  Matrix w;      // n x r
  Matrix v;      // n x r
  Vector sigma;  // retained singular values of S^T R, positive, nonincreasing
};

// Balancing projection from the SVD of S^T R:
//   W = S U_r Sigma_r^{-1/2},  V = R X_r Sigma_r^{-1/2}.
// A fixed order larger than the numerical rank of S^T R throws RankDeficient;
// a tolerance order is capped at the numerical rank.
Projection bt_project(const Matrix& s, const Matrix& r, const OrderSpec& order);

enum class RomKind { homogeneous, split_so, split_x0, split_v0, combined };

const char* to_string(RomKind kind);

// Projected second-order model. X0/V0 carry zero columns when the producing
// scheme does not transport them. Stability of the reduced pencil is checked
// and recorded, never enforced.
struct ReducedModel {
  Matrix m, d, k;  // r x r
  Matrix b;        // r x m
  Matrix c;        // p x r
  Matrix x0;       // r x n_x0
  Matrix v0;       // r x n_v0
  Vector retained_sigma;
  RomKind kind = RomKind::homogeneous;
  Matrix proj_w, proj_v;  // projection pair used (n x r); empty when loaded
  bool stable = true;
  double spectral_abscissa = 0.0;

  Index order() const { return m.rows(); }
  SecondOrderSystem to_second_order() const;
};

// Independent reductions of the three superposition subsystems.
struct SplitReduction {
  ReducedModel rom_so;
  ReducedModel rom_x0;
  ReducedModel rom_v0;
};

struct SplitOrders {
  OrderSpec so;
  OrderSpec x0;
  OrderSpec v0;
};

// One balanced truncation per tag with the shared observability factor S;
// X0 is carried only on rom_x0, V0 only on rom_v0. Tags with empty factors
// produce order-0 models.
SplitReduction reduce_split(const SecondOrderSystem& sos,
                            const GramianFactors& factors,
                            const SplitOrders& orders);

// Single balanced truncation against [R_so, R_x0, R_v0]; B, X0, V0 are all
// projected with the same pair.
ReducedModel reduce_combined(const SecondOrderSystem& sos,
                             const GramianFactors& factors,
                             const OrderSpec& order);

// Baseline balanced truncation from R_so and S only. X0 and V0 are projected
// with the same W so the result can be simulated with initial data.
ReducedModel reduce_homogeneous(const SecondOrderSystem& sos,
                                const GramianFactors& factors,
                                const OrderSpec& order);

// Convenience overload computing the two needed factors internally.
ReducedModel reduce_homogeneous(const SecondOrderSystem& sos,
                                const OrderSpec& order,
                                double factor_tol = kGramianFactorTol);

}  // namespace somor
