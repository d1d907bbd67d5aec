#pragma once

#include <utility>

#include "somor/second_order_system.hpp"

namespace somor {

// Parameters of the mass-spring-damper chain. Each value vector holds either
// one entry (uniform) or n entries. Stiffness entry i sets both the ground
// spring at mass i and the spring between masses i and i+1; damper entry i
// is a dashpot between mass i and ground. Rayleigh terms add
// alpha * M + beta * K to D.
struct MsdParams {
  Vector masses = Vector::Ones(1);
  Vector stiffnesses = Vector::Ones(1);
  Vector dampers = Vector::Zero(1);
  double rayleigh_alpha = 0.1;
  double rayleigh_beta = 0.1;
};

// Chain of n masses with ground and neighbor springs; the input forces the
// n-th mass, the output observes it, X0 = e_n and V0 = e_1.
SecondOrderSystem generate_msd(Index n, const MsdParams& params = {});

// Initial-condition direction for the projection-complement setup: with
// rank(W) = l (singular values above sigma_1 * 1e-12), returns column l+1 of
// the full U factor of W's SVD as both the position and velocity basis.
// Throws FullRank when W has full row rank.
std::pair<Matrix, Matrix> building_init_from_projection(const Matrix& w_so);

}  // namespace somor
