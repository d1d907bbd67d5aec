#include "somor/csv.hpp"

#include <fstream>
#include <iomanip>

#include "somor/errors.hpp"

namespace somor {

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& y, const Trajectory& y_hat,
                          const Trajectory& l2err_running) {
  if (!(y.grid == y_hat.grid) || !(y.grid == l2err_running.grid)) {
    throw GridMismatch("write_trajectory_csv: time grids differ");
  }
  if (y.num_outputs() != y_hat.num_outputs() ||
      l2err_running.num_outputs() != 1) {
    throw GridMismatch("write_trajectory_csv: output dimensions differ");
  }
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << std::setprecision(17);
  out << "t";
  for (Index i = 0; i < y.num_outputs(); ++i) out << ",y_" << (i + 1);
  for (Index i = 0; i < y.num_outputs(); ++i) out << ",yhat_" << (i + 1);
  out << ",l2err_running\n";
  for (Index k = 0; k < y.grid.num_points(); ++k) {
    out << y.grid.time(k);
    for (Index i = 0; i < y.num_outputs(); ++i) out << "," << y.samples(i, k);
    for (Index i = 0; i < y.num_outputs(); ++i) {
      out << "," << y_hat.samples(i, k);
    }
    out << "," << l2err_running.samples(0, k) << "\n";
  }
  if (!out) throw ParseError(path.string() + ": write failed");
}

void write_sigma_csv(const std::filesystem::path& path, const Vector& sigma,
                     Index retained) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << std::setprecision(17);
  out << "sigma,retained\n";
  for (Index i = 0; i < sigma.size(); ++i) {
    out << sigma(i) << "," << (i < retained ? 1 : 0) << "\n";
  }
  if (!out) throw ParseError(path.string() + ": write failed");
}

}  // namespace somor
