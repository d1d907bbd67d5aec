#pragma once

#include <filesystem>

#include "somor/types.hpp"

namespace somor {

// Reads a Matrix Market file (array or coordinate, real, general or
// symmetric) into a dense matrix; symmetric storage is expanded. Throws
// ParseError with file and line information.
Matrix read_matrix_market(const std::filesystem::path& path);

// Writes dense array/real/general Matrix Market with 17 significant digits,
// so a read-back reproduces the values bit for bit.
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

}  // namespace somor
