#pragma once

#include <filesystem>

#include "somor/simulate.hpp"

namespace somor {

// Columns t, y_1..y_p, yhat_1..yhat_p, l2err_running; comma separator,
// 17 significant digits, LF line endings.
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& y, const Trajectory& y_hat,
                          const Trajectory& l2err_running);

// One `sigma,retained` row per singular value (retained is 1 or 0).
void write_sigma_csv(const std::filesystem::path& path, const Vector& sigma,
                     Index retained);

}  // namespace somor
