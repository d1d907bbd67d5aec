#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "somor/somor.hpp"

namespace {

namespace fs = std::filesystem;
using somor::Index;
using somor::Matrix;
using somor::Vector;

std::vector<double> parse_number_list(const std::string& raw,
                                      const char* what) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw somor::InvalidParameter(std::string("cannot parse ") + what +
                                    " entry '" + token + "'");
    }
  }
  if (out.empty()) {
    throw somor::InvalidParameter(std::string(what) + " must not be empty");
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

struct OrderArgs {
  std::string order;  // "r" or "r_so,r_x0,r_v0"
  double tol = 0.0;
  bool has_order = false;
  bool has_tol = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--order", order,
                    "Reduced order, one value or so,x0,v0 for --scheme split")
        ->each([this](const std::string&) { has_order = true; });
    cmd->add_option("--tol", tol,
                    "Relative singular-value tolerance instead of --order")
        ->each([this](const std::string&) { has_tol = true; });
  }

  void require_one() const {
    if (has_order == has_tol) {
      throw somor::InvalidParameter(
          "exactly one of --order and --tol is required");
    }
  }

  somor::OrderSpec single() const {
    require_one();
    if (has_tol) return somor::OrderSpec::tolerance(tol);
    const auto values = parse_number_list(order, "--order");
    if (values.size() != 1) {
      throw somor::InvalidParameter("this scheme takes a single --order value");
    }
    return somor::OrderSpec::fixed(static_cast<Index>(values[0]));
  }

  somor::SplitOrders split() const {
    require_one();
    if (has_tol) {
      const auto spec = somor::OrderSpec::tolerance(tol);
      return {spec, spec, spec};
    }
    auto values = parse_number_list(order, "--order");
    if (values.size() == 1) values = {values[0], values[0], values[0]};
    if (values.size() != 3) {
      throw somor::InvalidParameter(
          "--scheme split takes one or three --order values");
    }
    return {somor::OrderSpec::fixed(static_cast<Index>(values[0])),
            somor::OrderSpec::fixed(static_cast<Index>(values[1])),
            somor::OrderSpec::fixed(static_cast<Index>(values[2]))};
  }
};

void warn_if_unstable(const somor::ReducedModel& rom) {
  if (!rom.stable) {
    std::cerr << "warning: reduced model (" << somor::to_string(rom.kind)
              << ") is not asymptotically stable (abscissa "
              << rom.spectral_abscissa << ")\n";
  }
}

void run_reduce(const fs::path& manifest_path, const std::string& scheme,
                const OrderArgs& orders, const fs::path& out_dir) {
  const somor::LoadedSystem loaded = somor::read_manifest(manifest_path);
  const somor::GramianFactors factors =
      somor::controllability_factors(loaded.system);
  const somor::HankelReport hankel = somor::hankel_report(factors);

  fs::create_directories(out_dir);
  std::cout << "scheme=" << scheme << "\n";
  if (scheme == "split") {
    const somor::SplitReduction split =
        somor::reduce_split(loaded.system, factors, orders.split());
    warn_if_unstable(split.rom_so);
    warn_if_unstable(split.rom_x0);
    warn_if_unstable(split.rom_v0);
    somor::write_rom_dir(out_dir, somor::make_bundle(split));
    somor::write_sigma_csv(out_dir / "sigma_so.csv", hankel.so,
                           split.rom_so.order());
    somor::write_sigma_csv(out_dir / "sigma_x0.csv", hankel.x0,
                           split.rom_x0.order());
    somor::write_sigma_csv(out_dir / "sigma_v0.csv", hankel.v0,
                           split.rom_v0.order());
    std::cout << "r_so=" << split.rom_so.order() << "\n"
              << "r_x0=" << split.rom_x0.order() << "\n"
              << "r_v0=" << split.rom_v0.order() << "\n";
  } else if (scheme == "combined") {
    const somor::ReducedModel rom =
        somor::reduce_combined(loaded.system, factors, orders.single());
    warn_if_unstable(rom);
    somor::write_rom_dir(out_dir, somor::make_bundle(rom, scheme));
    somor::write_sigma_csv(out_dir / "sigma_combined.csv", hankel.combined,
                           rom.order());
    std::cout << "r=" << rom.order() << "\n";
  } else if (scheme == "homogeneous") {
    const somor::ReducedModel rom =
        somor::reduce_homogeneous(loaded.system, factors, orders.single());
    warn_if_unstable(rom);
    somor::write_rom_dir(out_dir, somor::make_bundle(rom, scheme));
    somor::write_sigma_csv(out_dir / "sigma_so.csv", hankel.so, rom.order());
    std::cout << "r=" << rom.order() << "\n";
  } else {
    throw somor::InvalidParameter("unknown scheme '" + scheme + "'");
  }
}

void run_simulate(const fs::path& manifest_path, const fs::path& rom_dir,
                  const fs::path& out_csv) {
  const somor::LoadedSystem loaded = somor::read_manifest(manifest_path);
  const somor::RomBundle bundle = somor::read_rom_dir(rom_dir);

  const somor::Trajectory y = somor::simulate(
      loaded.system, loaded.input, loaded.z0, loaded.w0, loaded.grid);
  somor::Trajectory y_hat =
      bundle.scheme == "split"
          ? somor::simulate(*bundle.split, loaded.input, loaded.z0, loaded.w0,
                            loaded.grid)
          : somor::simulate(*bundle.single, loaded.input, loaded.z0, loaded.w0,
                            loaded.grid);
  const somor::Trajectory running = somor::l2_error_integral(y, y_hat);
  somor::write_trajectory_csv(out_csv, y, y_hat, running);
  std::cout << "final_l2_error="
            << somor::format_number(
                   running.samples(0, running.grid.num_points() - 1))
            << "\n";
}

void run_bound(const fs::path& manifest_path, const fs::path& rom_dir) {
  const somor::LoadedSystem loaded = somor::read_manifest(manifest_path);
  const somor::RomBundle bundle = somor::read_rom_dir(rom_dir);
  const double u_hinf = somor::input_hinf_norm(loaded.input);

  std::cout << "scheme=" << bundle.scheme << "\n";
  somor::ErrorBoundReport report;
  if (bundle.scheme == "split") {
    report = somor::bound_split(loaded.system, *bundle.split, u_hinf,
                                loaded.z0, loaded.w0);
    std::cout << "h2_so=" << somor::format_number(*report.h2_so) << "\n"
              << "h2_x0=" << somor::format_number(*report.h2_x0) << "\n"
              << "h2_v0=" << somor::format_number(*report.h2_v0) << "\n";
  } else {
    report = somor::bound_combined(loaded.system, *bundle.single, u_hinf,
                                   loaded.z0, loaded.w0);
    std::cout << "h2_combined=" << somor::format_number(*report.h2_combined)
              << "\n";
  }
  std::cout << "u_hinf=" << somor::format_number(report.input_hinf) << "\n"
            << "z0_norm=" << somor::format_number(report.z0_norm) << "\n"
            << "w0_norm=" << somor::format_number(report.w0_norm) << "\n"
            << "total_bound=" << somor::format_number(report.total) << "\n";
}

void run_hsv(const fs::path& manifest_path, const fs::path& out_dir) {
  const somor::LoadedSystem loaded = somor::read_manifest(manifest_path);
  const somor::GramianFactors factors =
      somor::controllability_factors(loaded.system);
  const somor::HankelReport hankel = somor::hankel_report(factors);
  fs::create_directories(out_dir);
  somor::write_sigma_csv(out_dir / "sigma_so.csv", hankel.so,
                         hankel.so.size());
  somor::write_sigma_csv(out_dir / "sigma_x0.csv", hankel.x0,
                         hankel.x0.size());
  somor::write_sigma_csv(out_dir / "sigma_v0.csv", hankel.v0,
                         hankel.v0.size());
  somor::write_sigma_csv(out_dir / "sigma_combined.csv", hankel.combined,
                         hankel.combined.size());
  std::cout << "n_so=" << hankel.so.size() << "\n"
            << "n_x0=" << hankel.x0.size() << "\n"
            << "n_v0=" << hankel.v0.size() << "\n"
            << "n_combined=" << hankel.combined.size() << "\n";
}

void run_generate_msd(Index n, const std::string& mass,
                      const std::string& stiffness, const std::string& damper,
                      double rayleigh_alpha, double rayleigh_beta,
                      double input_alpha, double input_beta, double t_end,
                      double h, const fs::path& out_dir) {
  somor::MsdParams params;
  params.masses = to_vector(parse_number_list(mass, "--mass"));
  params.stiffnesses = to_vector(parse_number_list(stiffness, "--stiffness"));
  params.dampers = to_vector(parse_number_list(damper, "--damper"));
  params.rayleigh_alpha = rayleigh_alpha;
  params.rayleigh_beta = rayleigh_beta;
  const somor::SecondOrderSystem sys = somor::generate_msd(n, params);

  fs::create_directories(out_dir);
  somor::write_matrix_market(out_dir / "M.mtx", sys.m());
  somor::write_matrix_market(out_dir / "D.mtx", sys.d());
  somor::write_matrix_market(out_dir / "K.mtx", sys.k());
  somor::write_matrix_market(out_dir / "B.mtx", sys.b());
  somor::write_matrix_market(out_dir / "C.mtx", sys.c());
  somor::write_matrix_market(out_dir / "X0.mtx", sys.x0());
  somor::write_matrix_market(out_dir / "V0.mtx", sys.v0());

  std::ofstream manifest(out_dir / "manifest.toml");
  if (!manifest) {
    throw somor::ParseError((out_dir / "manifest.toml").string() +
                            ": cannot open for writing");
  }
  manifest << "# mass-spring-damper chain, n = " << n << "\n"
           << "M = M.mtx\nD = D.mtx\nK = K.mtx\nB = B.mtx\nC = C.mtx\n"
           << "X0 = X0.mtx\nV0 = V0.mtx\n"
           << "input.kind = exponential\n"
           << "input.alpha = " << somor::format_number(input_alpha) << "\n"
           << "input.beta = " << somor::format_number(input_beta) << "\n"
           << "grid.t_end = " << somor::format_number(t_end) << "\n"
           << "grid.h = " << somor::format_number(h) << "\n"
           << "z0 = 1.0\nw0 = 1.0\n";
  std::cout << "manifest=" << (out_dir / "manifest.toml").string() << "\n"
            << "n=" << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "somor: structure-preserving balanced truncation for second-order "
      "systems with inhomogeneous initial conditions"};
  app.require_subcommand(1);

  std::string manifest_path, scheme, rom_dir, out_path;
  OrderArgs orders;

  CLI::App* reduce = app.add_subcommand(
      "reduce", "Reduce a system and write the reduced model directory");
  reduce->add_option("--manifest", manifest_path, "System manifest")
      ->required();
  reduce->add_option("--scheme", scheme, "split, combined or homogeneous")
      ->required();
  orders.add_to(reduce);
  reduce->add_option("--out", out_path, "Output directory")->required();
  reduce->callback(
      [&] { run_reduce(manifest_path, scheme, orders, out_path); });

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "Simulate full and reduced systems, write a trajectory CSV");
  simulate->add_option("--manifest", manifest_path, "System manifest")
      ->required();
  simulate->add_option("--rom", rom_dir, "Reduced model directory")
      ->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();
  simulate->callback([&] { run_simulate(manifest_path, rom_dir, out_path); });

  CLI::App* bound = app.add_subcommand(
      "bound", "Print H2 error terms and the L2 output-error bound");
  bound->add_option("--manifest", manifest_path, "System manifest")
      ->required();
  bound->add_option("--rom", rom_dir, "Reduced model directory")->required();
  bound->callback([&] { run_bound(manifest_path, rom_dir); });

  CLI::App* hsv = app.add_subcommand(
      "hsv", "Write Hankel singular value spectra for all subsystems");
  hsv->add_option("--manifest", manifest_path, "System manifest")->required();
  hsv->add_option("--out", out_path, "Output directory")->required();
  hsv->callback([&] { run_hsv(manifest_path, out_path); });

  Index msd_n = 0;
  std::string msd_mass = "1", msd_stiffness = "1", msd_damper = "0";
  double msd_alpha = 0.1, msd_beta = 0.1;
  double input_alpha = 0.2, input_beta = -1.0;
  double t_end = somor::kDefaultHorizon, step = somor::kDefaultStep;
  CLI::App* gen = app.add_subcommand(
      "generate-msd", "Generate a mass-spring-damper chain benchmark");
  gen->add_option("--n", msd_n, "Number of masses")->required();
  gen->add_option("--mass", msd_mass, "Mass value or comma list");
  gen->add_option("--stiffness", msd_stiffness,
                  "Stiffness value or comma list");
  gen->add_option("--damper", msd_damper,
                  "Ground dashpot value or comma list");
  gen->add_option("--rayleigh-alpha", msd_alpha, "Rayleigh mass coefficient");
  gen->add_option("--rayleigh-beta", msd_beta,
                  "Rayleigh stiffness coefficient");
  gen->add_option("--input-alpha", input_alpha,
                  "Input amplitude for u(t) = alpha exp(beta t)");
  gen->add_option("--input-beta", input_beta, "Input decay rate");
  gen->add_option("--t-end", t_end, "Simulation horizon");
  gen->add_option("--step", step, "Simulation step");
  gen->add_option("--out", out_path, "Output directory")->required();
  gen->callback([&] {
    run_generate_msd(msd_n, msd_mass, msd_stiffness, msd_damper, msd_alpha,
                     msd_beta, input_alpha, input_beta, t_end, step, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const somor::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const somor::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
