// Acceptance suite: one line per criterion, [PASS]/[FAIL]/[SKIP], exit code
// equals the number of failures. Heavier shared state (the n = 200
// mass-spring-damper pipeline) is computed once and reused.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "somor/somor.hpp"
#include "support/test_support.hpp"

namespace {

using somor::Complex;
using somor::ComplexMatrix;
using somor::GramianFactors;
using somor::Index;
using somor::InputSignal;
using somor::Matrix;
using somor::OrderSpec;
using somor::SubsystemTag;
using somor::TimeGrid;
using somor::Trajectory;
using somor::Vector;

struct MsdState {
  somor::SecondOrderSystem sys;
  somor::FirstOrderSystem fos;
  std::unique_ptr<somor::PencilContext> ctx;
  Matrix p_so, p_x0, p_v0, q;  // full 2n x 2n solutions
  GramianFactors factors;
  somor::SplitReduction split;
  somor::ReducedModel com, hom;
  somor::ErrorBoundReport bound_spl, bound_com;
  double err_spl = 0, err_com = 0, err_hom = 0;

  MsdState() : sys(somor::generate_msd(200)), fos(somor::companion(sys)) {
    ctx = std::make_unique<somor::PencilContext>(fos.e, fos.a);
    p_so = ctx->controllability_gramian(
        somor::subsystem_input_matrix(sys, SubsystemTag::so));
    p_x0 = ctx->controllability_gramian(
        somor::subsystem_input_matrix(sys, SubsystemTag::x0));
    p_v0 = ctx->controllability_gramian(
        somor::subsystem_input_matrix(sys, SubsystemTag::v0));
    q = ctx->observability_gramian(fos.c);
    factors.r_so =
        somor::psd_lowrank_factor(somor::extract_position_block(p_so));
    factors.r_x0 =
        somor::psd_lowrank_factor(somor::extract_position_block(p_x0));
    factors.r_v0 =
        somor::psd_lowrank_factor(somor::extract_position_block(p_v0));
    factors.s =
        somor::psd_lowrank_factor(somor::extract_velocity_obs_block(q));

    const auto tol = OrderSpec::tolerance(1e-4);
    split = somor::reduce_split(sys, factors, {tol, tol, tol});
    com = somor::reduce_combined(sys, factors, tol);
    hom = somor::reduce_homogeneous(sys, factors,
                                    OrderSpec::fixed(com.order()));

    const double u_hinf = somor::hinf_exp_input(0.2, -1.0);
    const Vector z0 = Vector::Ones(1);
    const Vector w0 = Vector::Ones(1);
    bound_spl = somor::bound_split(sys, split, u_hinf, z0, w0);
    bound_com = somor::bound_combined(sys, com, u_hinf, z0, w0);

    const TimeGrid grid(0.0, 20.0, 1e-3);
    const InputSignal u = InputSignal::exponential(0.2, -1.0, 1);
    const Trajectory y = somor::simulate(sys, u, z0, w0, grid);
    auto final_l2 = [&](const Trajectory& y_hat) {
      const Trajectory running = somor::l2_error_integral(y, y_hat);
      return running.samples(0, running.grid.num_points() - 1);
    };
    err_spl = final_l2(somor::simulate(split, u, z0, w0, grid));
    err_com = final_l2(somor::simulate(com, u, z0, w0, grid));
    err_hom = final_l2(somor::simulate(hom, u, z0, w0, grid));
  }
};

MsdState& msd_state() {
  static MsdState state;
  return state;
}

// --- criteria ---------------------------------------------------------------

bool superposition_identity(std::string& detail) {
  double worst = 0.0;
  for (unsigned seed = 1; seed <= 25; ++seed) {
    const Index n = 2 + (seed * 7) % 9;         // 2..10
    const Index mp = 1 + (seed % 2);            // m = p in {1, 2}
    const Index nx0 = 1 + (seed % 3);
    const Index nv0 = 1 + ((seed + 1) % 2);
    const auto sys =
        somor_test::random_stable_system(1000 + seed, n, mp, mp, nx0, nv0);
    const TimeGrid grid(0.0, 10.0, 1e-4);
    const InputSignal u = InputSignal::exponential(0.2, -1.0, mp);
    Vector z0(nx0), w0(nv0);
    for (Index i = 0; i < nx0; ++i) z0(i) = (i % 2 == 0) ? 1.0 : -0.5;
    for (Index i = 0; i < nv0; ++i) w0(i) = (i % 2 == 0) ? -1.0 : 0.75;

    const Trajectory y = somor::simulate(sys, u, z0, w0, grid);
    const Trajectory y_so = somor::simulate(sys, u, Vector::Zero(nx0),
                                            Vector::Zero(nv0), grid);
    const Trajectory y_x0 = somor::simulate(sys, InputSignal::zero(mp), z0,
                                            Vector::Zero(nv0), grid);
    const Trajectory y_v0 = somor::simulate(sys, InputSignal::zero(mp),
                                            Vector::Zero(nx0), w0, grid);
    const Trajectory sum = somor::superpose(y_so, y_x0, y_v0);
    worst = std::max(worst,
                     (y.samples - sum.samples).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << "sup error " << worst << " over 25 systems (tol 1e-7)";
  detail = os.str();
  return worst <= 1e-7;
}

bool combined_gramian_identity(std::string& detail) {
  double worst = 0.0;
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const Index n = 2 + (seed * 5) % 9;
    const auto sys =
        somor_test::random_stable_system(2000 + seed, n, 2, 1, 2, 1);
    const GramianFactors f = somor::controllability_factors(sys);
    const Matrix combined = somor::combined_factor(f);
    const Matrix sum = combined * combined.transpose();

    const auto fos = somor::companion(sys);
    const Matrix b_so = somor::subsystem_input_matrix(sys, SubsystemTag::so);
    const Matrix b_x0 = somor::subsystem_input_matrix(sys, SubsystemTag::x0);
    const Matrix b_v0 = somor::subsystem_input_matrix(sys, SubsystemTag::v0);
    Matrix stacked(fos.order(), b_so.cols() + b_x0.cols() + b_v0.cols());
    stacked << b_so, b_x0, b_v0;
    const Matrix p_aug = somor::extract_position_block(
        somor::solve_gen_lyapunov(fos.e, fos.a, stacked));
    worst = std::max(worst, (sum - p_aug).norm() / p_aug.norm());
  }
  std::ostringstream os;
  os << "worst relative deviation " << worst << " (tol 1e-8)";
  detail = os.str();
  return worst <= 1e-8;
}

double lyap_rel_residual(const Matrix& e, const Matrix& a, const Matrix& f,
                         const Matrix& p) {
  const Matrix rhs = f * f.transpose();
  return (a * p * e.transpose() + e * p * a.transpose() + rhs).norm() /
         rhs.norm();
}

bool residual_contract(std::string& detail) {
  double worst = 0.0;
  // Random companion systems at small dimensions.
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Index n = 2 + (seed * 3) % 9;
    const auto sys =
        somor_test::random_stable_system(3000 + seed, n, 2, 2, 1, 1);
    const auto fos = somor::companion(sys);
    for (SubsystemTag tag :
         {SubsystemTag::so, SubsystemTag::x0, SubsystemTag::v0}) {
      const Matrix f = somor::subsystem_input_matrix(sys, tag);
      worst = std::max(worst, lyap_rel_residual(
                                  fos.e, fos.a, f,
                                  somor::solve_gen_lyapunov(fos.e, fos.a, f)));
    }
  }
  // The n = 200 chain: companion dimension 2n = 400.
  const MsdState& msd = msd_state();
  const auto& fos = msd.fos;
  worst = std::max(
      worst, lyap_rel_residual(
                 fos.e, fos.a,
                 somor::subsystem_input_matrix(msd.sys, SubsystemTag::so),
                 msd.p_so));
  worst = std::max(
      worst, lyap_rel_residual(
                 fos.e, fos.a,
                 somor::subsystem_input_matrix(msd.sys, SubsystemTag::x0),
                 msd.p_x0));
  worst = std::max(
      worst, lyap_rel_residual(
                 fos.e, fos.a,
                 somor::subsystem_input_matrix(msd.sys, SubsystemTag::v0),
                 msd.p_v0));
  {
    const Matrix rhs = fos.c.transpose() * fos.c;
    worst = std::max(worst, (fos.a.transpose() * msd.q * fos.e +
                             fos.e.transpose() * msd.q * fos.a + rhs)
                                .norm() /
                                rhs.norm());
  }
  // Sylvester cross against a reduced companion of the same chain.
  {
    const auto red_fos =
        somor::companion(msd.split.rom_so.to_second_order());
    const Matrix x = somor::solve_sylvester_cross(
        fos.e, fos.a, fos.b, red_fos.e, red_fos.a, red_fos.b);
    const Matrix rhs = fos.b * red_fos.b.transpose();
    worst = std::max(worst,
                     (fos.a * x * red_fos.e.transpose() +
                      fos.e * x * red_fos.a.transpose() + rhs)
                             .norm() /
                         rhs.norm());
  }
  std::ostringstream os;
  os << "worst relative residual " << worst
     << " incl. companion dimension 400 (tol 1e-10)";
  detail = os.str();
  return worst <= 1e-10;
}

bool full_order_exactness(std::string& detail) {
  const auto sys = somor_test::random_stable_system(4000, 5, 2, 2, 2, 1);
  const GramianFactors factors = somor::controllability_factors(sys);
  const Index n = sys.dim();

  auto mismatch = [&](const somor::SecondOrderSystem& red, SubsystemTag tag) {
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
      const double w = std::pow(10.0, -1.0 + 3.0 * j / 19.0);
      const ComplexMatrix h = somor::eval_transfer(sys, tag, Complex(0, w));
      const ComplexMatrix hr = somor::eval_transfer(red, tag, Complex(0, w));
      worst = std::max(worst, (h - hr).norm() / h.norm());
    }
    return worst;
  };

  double worst = 0.0;
  const auto split = somor::reduce_split(
      sys, factors,
      {OrderSpec::fixed(n), OrderSpec::fixed(n), OrderSpec::fixed(n)});
  worst = std::max(worst,
                   mismatch(split.rom_so.to_second_order(), SubsystemTag::so));
  worst = std::max(worst,
                   mismatch(split.rom_x0.to_second_order(), SubsystemTag::x0));
  worst = std::max(worst,
                   mismatch(split.rom_v0.to_second_order(), SubsystemTag::v0));

  const auto com = somor::reduce_combined(sys, factors, OrderSpec::fixed(n));
  const auto com_sys = com.to_second_order();
  for (SubsystemTag tag :
       {SubsystemTag::so, SubsystemTag::x0, SubsystemTag::v0}) {
    worst = std::max(worst, mismatch(com_sys, tag));
  }

  const auto hom =
      somor::reduce_homogeneous(sys, factors, OrderSpec::fixed(n));
  const auto hom_sys = hom.to_second_order();
  for (SubsystemTag tag :
       {SubsystemTag::so, SubsystemTag::x0, SubsystemTag::v0}) {
    worst = std::max(worst, mismatch(hom_sys, tag));
  }

  std::ostringstream os;
  os << "worst relative transfer mismatch " << worst
     << " over 20 points x 3 schemes (tol 1e-8)";
  detail = os.str();
  return worst <= 1e-8;
}

bool h2_vs_quadrature(std::string& detail) {
  double worst = 0.0;
  auto scalar_fo = [](double a, double b, double c) {
    somor::FirstOrderSystem f;
    f.e = Matrix::Identity(1, 1);
    f.a = Matrix::Constant(1, 1, a);
    f.b = Matrix::Constant(1, 1, b);
    f.c = Matrix::Constant(1, 1, c);
    return f;
  };
  std::vector<std::pair<somor::FirstOrderSystem, somor::FirstOrderSystem>>
      cases;
  cases.emplace_back(scalar_fo(-1, 1, 1), scalar_fo(-2, 1, 1));
  cases.emplace_back(scalar_fo(-0.5, 2, 1), scalar_fo(-3, 1, 0.5));
  cases.emplace_back(scalar_fo(-1, 1, 1), scalar_fo(-1, 0.9, 1));
  cases.emplace_back(scalar_fo(-4, 1, 2), scalar_fo(-0.25, 1, 1));
  cases.emplace_back(scalar_fo(-2, 3, 1), scalar_fo(-2, 3, 0.99));
  for (unsigned seed = 1; seed <= 5; ++seed) {
    // Scalar second-order systems give genuine 2x2 first-order pencils.
    cases.emplace_back(
        somor::companion(
            somor_test::random_stable_system(5000 + seed, 1, 1, 1, 1, 1)),
        somor::companion(
            somor_test::random_stable_system(5100 + seed, 1, 1, 1, 1, 1)));
  }
  for (const auto& [full, red] : cases) {
    const double traced = somor::h2_error(full, red);
    const double quad =
        somor_test::h2_distance_by_quadrature(full, red, 1e-7);
    worst = std::max(worst, std::abs(traced - quad) / quad);
  }
  std::ostringstream os;
  os << "worst relative disagreement " << worst << " over " << cases.size()
     << " error systems (tol 1e-4)";
  detail = os.str();
  return worst <= 1e-4;
}

bool bound_dominance(std::string& detail) {
  const MsdState& msd = msd_state();
  const double ratio_spl = msd.bound_spl.total / msd.err_spl;
  const double ratio_com = msd.bound_com.total / msd.err_com;
  std::ostringstream os;
  os << "split: error " << msd.err_spl << " <= bound " << msd.bound_spl.total
     << " (ratio " << ratio_spl << "); combined: error " << msd.err_com
     << " <= bound " << msd.bound_com.total << " (ratio " << ratio_com << ")";
  detail = os.str();
  return msd.err_spl <= msd.bound_spl.total &&
         msd.err_com <= msd.bound_com.total && ratio_spl <= 1e4 &&
         ratio_com <= 1e4;
}

bool method_ordering(std::string& detail) {
  const MsdState& msd = msd_state();
  std::ostringstream os;
  os << "final L2 errors: split " << msd.err_spl << " (orders "
     << msd.split.rom_so.order() << "/" << msd.split.rom_x0.order() << "/"
     << msd.split.rom_v0.order() << "), combined " << msd.err_com << " (r "
     << msd.com.order() << "), homogeneous " << msd.err_hom << " (r "
     << msd.hom.order() << ")";
  detail = os.str();
  return msd.err_spl < msd.err_hom && msd.err_com < msd.err_hom;
}

bool building_benchmark(std::string& detail, bool& skipped) {
  const char* env = std::getenv("SOMOR_BUILDING_MANIFEST");
  if (env == nullptr || std::string(env).empty()) {
    skipped = true;
    detail = "set SOMOR_BUILDING_MANIFEST to the n = 24 building manifest "
             "to enable";
    return true;
  }
  const auto loaded = somor::read_manifest(env);
  const auto& base = loaded.system;

  // Projection for the homogeneous reduction at order 10; the initial
  // condition is the first left singular direction beyond its rank.
  const auto hom10 =
      somor::reduce_homogeneous(base, OrderSpec::fixed(10));
  const auto [x0, v0] = somor::building_init_from_projection(hom10.proj_w);
  const somor::SecondOrderSystem sys(base.m(), base.d(), base.k(), base.b(),
                                     base.c(), x0, v0);

  const GramianFactors factors = somor::controllability_factors(sys);
  const auto split = somor::reduce_split(
      sys, factors,
      {OrderSpec::fixed(10), OrderSpec::fixed(10), OrderSpec::fixed(10)});
  const auto com = somor::reduce_combined(sys, factors, OrderSpec::fixed(10));

  const double u_hinf = somor::hinf_exp_input(0.2, -1.0);
  const Vector one = Vector::Ones(1);
  const auto bound_spl = somor::bound_split(sys, split, u_hinf, one, one);
  const auto bound_com = somor::bound_combined(sys, com, u_hinf, one, one);

  const double ref_spl = 3.2740e-5;
  const double ref_com = 1.5469e-4;
  const double dev_spl = std::abs(bound_spl.total - ref_spl) / ref_spl;
  const double dev_com = std::abs(bound_com.total - ref_com) / ref_com;
  std::ostringstream os;
  os << "split bound " << bound_spl.total << " vs " << ref_spl
     << " (deviation " << dev_spl << "), combined bound " << bound_com.total
     << " vs " << ref_com << " (deviation " << dev_com << "), tol 5%";
  detail = os.str();
  return dev_spl <= 0.05 && dev_com <= 0.05;
}

bool scalar_simulation_oracles(std::string& detail) {
  auto scalar = [](double v) { return Matrix::Constant(1, 1, v); };
  auto run = [&](double x0, double v0, double h) {
    const Trajectory y = somor::simulate(
        scalar(1), scalar(3), scalar(2), scalar(1), scalar(1),
        Vector::Constant(1, x0), Vector::Constant(1, v0),
        InputSignal::zero(1), TimeGrid(0.0, 1.0, h));
    return y.samples(0, y.grid.num_points() - 1);
  };
  const double y_pos = run(1.0, 0.0, 1e-3);
  const double y_vel = run(0.0, 1.0, 1e-3);
  const double exact_pos = 2.0 * std::exp(-1.0) - std::exp(-2.0);
  const double exact_vel = std::exp(-1.0) - std::exp(-2.0);
  const double ratio = std::abs(run(1.0, 0.0, 4e-3) - exact_pos) /
                       std::abs(run(1.0, 0.0, 2e-3) - exact_pos);
  std::ostringstream os;
  os << "y(1) = " << y_pos << " vs 0.60042, " << y_vel
     << " vs 0.23254; step-halving ratio " << ratio;
  detail = os.str();
  return std::abs(y_pos - 0.60042) <= 1e-4 &&
         std::abs(y_vel - 0.23254) <= 1e-4 && ratio >= 3.5 && ratio <= 4.5;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<bool(std::string&, bool&)> run;
  };
  auto plain = [](bool (*fn)(std::string&)) {
    return [fn](std::string& detail, bool&) { return fn(detail); };
  };
  const std::vector<Criterion> criteria = {
      {"superposition identity (25 random systems)", plain(superposition_identity)},
      {"combined-Gramian identity (10 random systems)", plain(combined_gramian_identity)},
      {"Lyapunov/Sylvester residual contract", plain(residual_contract)},
      {"full-order reduction is exact", plain(full_order_exactness)},
      {"H2 trace formula vs quadrature", plain(h2_vs_quadrature)},
      {"bound dominance on the n=200 chain", plain(bound_dominance)},
      {"method ordering on the n=200 chain", plain(method_ordering)},
      {"building benchmark (opt-in)", building_benchmark},
      {"scalar analytic simulation oracles", plain(scalar_simulation_oracles)},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool skipped = false;
    bool ok = false;
    try {
      ok = criterion.run(detail, skipped);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const char* verdict = skipped ? "[SKIP]" : (ok ? "[PASS]" : "[FAIL]");
    std::cout << verdict << " " << criterion.name << " (" << secs << " s)"
              << (detail.empty() ? "" : " - " + detail) << std::endl;
    if (!ok && !skipped) ++failures;
  }
  return failures;
}
