#pragma once

#include <filesystem>

#include "somor/second_order_system.hpp"
#include "somor/simulate.hpp"

namespace somor {

// Simulation defaults used when a manifest does not pin a grid.
inline constexpr double kDefaultHorizon = 20.0;
inline constexpr double kDefaultStep = 1e-3;

// A system manifest resolved into in-memory objects. z0/w0 default to all
// ones when the corresponding basis is present but no coefficients are given.
struct LoadedSystem {
  SecondOrderSystem system;
  InputSignal input;
  TimeGrid grid;
  Vector z0;
  Vector w0;
};

// Reads a manifest (keys M, D, K, B, C, X0, V0, input.kind, input.alpha,
// input.beta, grid.t_end, grid.h, z0, w0; matrix paths relative to the
// manifest). Matrix files are Matrix Market. Dimension checks name the
// offending pair. Stability is not checked here; reduction entry points do
// that.
LoadedSystem read_manifest(const std::filesystem::path& path);

// H-infinity norm of the Laplace transform of the manifest input signal
// (zero or exponential broadcast over m channels).
double input_hinf_norm(const InputSignal& input);

}  // namespace somor
