#include "somor/reduction.hpp"

#include <gtest/gtest.h>

#include "support/test_support.hpp"

namespace {

using somor::Complex;
using somor::ComplexMatrix;
using somor::GramianFactors;
using somor::Index;
using somor::Matrix;
using somor::OrderSpec;
using somor::SubsystemTag;
using somor::Vector;

TEST(OrderFromTolerance, Examples) {
  Vector sigma(3);
  sigma << 1.0, 1e-2, 1e-5;
  EXPECT_EQ(somor::order_from_tolerance(sigma, 1e-4), 2);

  Vector one(1);
  one << 1.0;
  EXPECT_EQ(somor::order_from_tolerance(one, 1.0), 1);

  Vector boundary(2);
  boundary << 1.0, 1e-4;
  // Boundary values are kept.
  EXPECT_EQ(somor::order_from_tolerance(boundary, 1e-4), 2);
}

TEST(OrderFromTolerance, EmptyThrows) {
  EXPECT_THROW(somor::order_from_tolerance(Vector(0), 1e-4),
               somor::EmptySpectrum);
}

TEST(BtProject, IdentityFullOrder) {
  const auto pr = somor::bt_project(Matrix::Identity(2, 2),
                                    Matrix::Identity(2, 2),
                                    OrderSpec::fixed(2));
  EXPECT_LE((pr.sigma - Vector::Ones(2)).norm(), 1e-13);
  EXPECT_LE((pr.w.transpose() * pr.v - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(BtProject, TiedSpectrumKeepsUnitVector) {
  // Singular values are tied; assert invariants rather than a specific basis.
  const auto pr = somor::bt_project(Matrix::Identity(2, 2),
                                    Matrix::Identity(2, 2),
                                    OrderSpec::fixed(1));
  ASSERT_EQ(pr.sigma.size(), 1);
  EXPECT_NEAR(pr.sigma(0), 1.0, 1e-13);
  EXPECT_NEAR(pr.w.norm(), 1.0, 1e-12);
  EXPECT_NEAR((pr.w.transpose() * pr.v)(0, 0), 1.0, 1e-12);
}

TEST(BtProject, DiagonalTruncation) {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 0) = 4.0;
  r(1, 1) = 1.0;
  const auto pr =
      somor::bt_project(Matrix::Identity(2, 2), r, OrderSpec::fixed(1));
  ASSERT_EQ(pr.sigma.size(), 1);
  EXPECT_NEAR(pr.sigma(0), 4.0, 1e-13);
  EXPECT_NEAR(std::abs(pr.w(0, 0)), 0.5, 1e-13);
  EXPECT_NEAR(pr.w(1, 0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(pr.v(0, 0)), 2.0, 1e-13);
  EXPECT_NEAR(pr.v(1, 0), 0.0, 1e-13);
}

TEST(BtProject, RankDeficientThrows) {
  Matrix r = Matrix::Zero(2, 1);
  r(0, 0) = 1.0;
  EXPECT_THROW(
      somor::bt_project(Matrix::Identity(2, 2), r, OrderSpec::fixed(2)),
      somor::RankDeficient);
  EXPECT_THROW(somor::bt_project(Matrix::Identity(2, 2), Matrix::Zero(2, 1),
                                 OrderSpec::fixed(1)),
               somor::RankDeficient);
}

TEST(BtProject, BiorthogonalityOnRandomFactors) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix s = somor_test::random_dense(rng, 8, 6);
    const Matrix r = somor_test::random_dense(rng, 8, 5);
    const auto pr = somor::bt_project(s, r, OrderSpec::fixed(4));
    EXPECT_LE((pr.w.transpose() * pr.v - Matrix::Identity(4, 4)).norm(),
              1e-10);
  }
}

TEST(BtProject, SpectrumSplitsIntoRetainedAndDiscarded) {
  std::mt19937 rng(29);
  const Matrix s = somor_test::random_dense(rng, 6, 6);
  const Matrix r = somor_test::random_dense(rng, 6, 6);
  const Vector full = somor::svd_decompose(s.transpose() * r).sigma;
  const auto pr = somor::bt_project(s, r, OrderSpec::fixed(3));
  EXPECT_LE((pr.sigma - full.head(3)).norm(), 1e-12 * full.norm());
}

class ReductionFixture : public ::testing::Test {
 protected:
  ReductionFixture()
      : sys(somor_test::random_stable_system(31, 5, 2, 2, 2, 1)),
        factors(somor::controllability_factors(sys)) {}

  somor::SecondOrderSystem sys;
  GramianFactors factors;
};

double transfer_mismatch(const somor::SecondOrderSystem& full,
                         const somor::SecondOrderSystem& red,
                         SubsystemTag tag) {
  double worst = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double w = std::pow(10.0, -1.0 + 3.0 * j / 19.0);
    const ComplexMatrix h = somor::eval_transfer(full, tag, Complex(0, w));
    const ComplexMatrix hr = somor::eval_transfer(red, tag, Complex(0, w));
    worst = std::max(worst, (h - hr).norm() / h.norm());
  }
  return worst;
}

TEST_F(ReductionFixture, FullOrderSplitIsExact) {
  const Index n = sys.dim();
  const somor::SplitOrders orders{OrderSpec::fixed(n), OrderSpec::fixed(n),
                                  OrderSpec::fixed(n)};
  const auto split = somor::reduce_split(sys, factors, orders);
  EXPECT_LE(transfer_mismatch(sys, split.rom_so.to_second_order(),
                              SubsystemTag::so),
            1e-8);
  EXPECT_LE(transfer_mismatch(sys, split.rom_x0.to_second_order(),
                              SubsystemTag::x0),
            1e-8);
  EXPECT_LE(transfer_mismatch(sys, split.rom_v0.to_second_order(),
                              SubsystemTag::v0),
            1e-8);
  EXPECT_EQ(split.rom_x0.x0.cols(), sys.x0_cols());
  EXPECT_EQ(split.rom_x0.v0.cols(), 0);
  EXPECT_EQ(split.rom_v0.v0.cols(), sys.v0_cols());
  EXPECT_EQ(split.rom_so.x0.cols(), 0);
}

TEST_F(ReductionFixture, FullOrderCombinedIsExact) {
  const auto rom =
      somor::reduce_combined(sys, factors, OrderSpec::fixed(sys.dim()));
  const auto red = rom.to_second_order();
  EXPECT_LE(transfer_mismatch(sys, red, SubsystemTag::so), 1e-8);
  EXPECT_LE(transfer_mismatch(sys, red, SubsystemTag::x0), 1e-8);
  EXPECT_LE(transfer_mismatch(sys, red, SubsystemTag::v0), 1e-8);
}

TEST_F(ReductionFixture, FullOrderHomogeneousIsExact) {
  const auto rom =
      somor::reduce_homogeneous(sys, factors, OrderSpec::fixed(sys.dim()));
  EXPECT_LE(transfer_mismatch(sys, rom.to_second_order(), SubsystemTag::so),
            1e-8);
}

TEST_F(ReductionFixture, HomogeneousEqualsSplitSoPath) {
  const somor::SplitOrders orders{OrderSpec::fixed(3), OrderSpec::fixed(3),
                                  OrderSpec::fixed(3)};
  const auto split = somor::reduce_split(sys, factors, orders);
  const auto hom = somor::reduce_homogeneous(sys, factors, OrderSpec::fixed(3));
  EXPECT_LE((split.rom_so.m - hom.m).norm(), 1e-12);
  EXPECT_LE((split.rom_so.d - hom.d).norm(), 1e-12);
  EXPECT_LE((split.rom_so.k - hom.k).norm(), 1e-12);
  EXPECT_LE((split.rom_so.b - hom.b).norm(), 1e-12);
  EXPECT_LE((split.rom_so.c - hom.c).norm(), 1e-12);
  // The homogeneous baseline transports the initial bases, the split so
  // model does not.
  EXPECT_EQ(hom.x0.cols(), sys.x0_cols());
  EXPECT_EQ(hom.v0.cols(), sys.v0_cols());
}

TEST_F(ReductionFixture, SelfComputedHomogeneousMatches) {
  const auto via_factors =
      somor::reduce_homogeneous(sys, factors, OrderSpec::fixed(3));
  const auto self = somor::reduce_homogeneous(sys, OrderSpec::fixed(3));
  EXPECT_LE((via_factors.m - self.m).norm(), 1e-9 * via_factors.m.norm());
}

TEST_F(ReductionFixture, ToleranceOrderSelection) {
  const auto rom =
      somor::reduce_combined(sys, factors, OrderSpec::tolerance(1e-4));
  ASSERT_GT(rom.order(), 0);
  const Vector& sigma = rom.retained_sigma;
  EXPECT_GE(sigma(sigma.size() - 1), 1e-4 * sigma(0));
}

// The reduced initial-position transfer function equals its explicit
// projected form C V (W^T (s^2 M + s D + K) V)^{-1} W^T (D + s M) V W^T X0.
TEST_F(ReductionFixture, ReducedTransferMatchesExplicitProjectedForm) {
  const somor::SplitOrders orders{OrderSpec::fixed(3), OrderSpec::fixed(3),
                                  OrderSpec::fixed(3)};
  const auto split = somor::reduce_split(sys, factors, orders);
  const auto& rom = split.rom_x0;
  const Matrix& w = rom.proj_w;
  const Matrix& v = rom.proj_v;
  EXPECT_LE((w.transpose() * v - Matrix::Identity(3, 3)).norm(), 1e-10);
  const auto red_sys = rom.to_second_order();
  for (double freq : {0.2, 1.0, 3.0}) {
    const Complex s(0, freq);
    const ComplexMatrix pencil =
        s * s * sys.m().cast<Complex>() + s * sys.d().cast<Complex>() +
        sys.k().cast<Complex>();
    const ComplexMatrix reduced_pencil =
        w.transpose().cast<Complex>() * pencil * v.cast<Complex>();
    const ComplexMatrix explicit_form =
        sys.c().cast<Complex>() * v.cast<Complex>() *
        reduced_pencil.partialPivLu().solve(
            w.transpose().cast<Complex>() *
            (sys.d().cast<Complex>() + s * sys.m().cast<Complex>()) *
            v.cast<Complex>() * w.transpose().cast<Complex>() *
            sys.x0().cast<Complex>());
    const ComplexMatrix via_rom =
        somor::eval_transfer(red_sys, SubsystemTag::x0, s);
    EXPECT_LE((explicit_form - via_rom).norm(), 1e-10 * explicit_form.norm());
  }
}

TEST(Reduction, EmptyX0GivesOrderZeroModel) {
  const auto base = somor_test::random_stable_system(37, 4, 1, 1, 1, 1);
  somor::SecondOrderSystem sys(base.m(), base.d(), base.k(), base.b(),
                               base.c(), Matrix(4, 0), base.v0());
  const auto factors = somor::controllability_factors(sys);
  const somor::SplitOrders orders{OrderSpec::fixed(2), OrderSpec::fixed(2),
                                  OrderSpec::fixed(2)};
  const auto split = somor::reduce_split(sys, factors, orders);
  EXPECT_EQ(split.rom_x0.order(), 0);
  EXPECT_TRUE(split.rom_x0.stable);
  EXPECT_EQ(split.rom_so.order(), 2);
}

TEST(Reduction, CombinedDegeneratesToHomogeneousWithoutInitialData) {
  const auto base = somor_test::random_stable_system(41, 4, 2, 1, 1, 1);
  somor::SecondOrderSystem sys(base.m(), base.d(), base.k(), base.b(),
                               base.c(), Matrix(4, 0), Matrix(4, 0));
  const auto factors = somor::controllability_factors(sys);
  const auto combined =
      somor::reduce_combined(sys, factors, OrderSpec::fixed(2));
  const auto hom = somor::reduce_homogeneous(sys, factors, OrderSpec::fixed(2));
  EXPECT_LE((combined.m - hom.m).norm(), 1e-12);
  EXPECT_LE((combined.b - hom.b).norm(), 1e-12);
}

TEST(Reduction, StabilityRecordedOnModels) {
  const auto sys = somor_test::random_stable_system(43, 4, 1, 1, 1, 1);
  const auto factors = somor::controllability_factors(sys);
  const auto rom = somor::reduce_combined(sys, factors, OrderSpec::fixed(3));
  EXPECT_TRUE(rom.stable);
  EXPECT_LT(rom.spectral_abscissa, 0.0);
}

}  // namespace
