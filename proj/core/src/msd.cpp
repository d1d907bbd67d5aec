#include "somor/msd.hpp"

#include <Eigen/SVD>
#include <string>

namespace somor {

namespace {

Vector expand(const Vector& v, Index n, const char* name) {
  if (v.size() == 1) return Vector::Constant(n, v(0));
  if (v.size() == n) return v;
  throw InvalidParameter(std::string("generate_msd: ") + name +
                         " must have 1 or n entries");
}

}  // namespace

SecondOrderSystem generate_msd(Index n, const MsdParams& params) {
  if (n < 2) throw InvalidParameter("generate_msd: n must be at least 2");
  const Vector mass = expand(params.masses, n, "masses");
  const Vector stiff = expand(params.stiffnesses, n, "stiffnesses");
  const Vector damp = expand(params.dampers, n, "dampers");
  if ((mass.array() <= 0.0).any() || (stiff.array() <= 0.0).any() ||
      (damp.array() < 0.0).any()) {
    throw InvalidParameter("generate_msd: masses and stiffnesses must be "
                           "positive, dampers nonnegative");
  }
  if (params.rayleigh_alpha < 0.0 || params.rayleigh_beta < 0.0) {
    throw InvalidParameter("generate_msd: Rayleigh coefficients must be "
                           "nonnegative");
  }

  const Matrix m = mass.asDiagonal();

  Matrix k = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    k(i, i) += stiff(i);  // ground spring
    if (i + 1 < n) {
      // neighbor spring between i and i+1
      k(i, i) += stiff(i);
      k(i + 1, i + 1) += stiff(i);
      k(i, i + 1) -= stiff(i);
      k(i + 1, i) -= stiff(i);
    }
  }

  Matrix d = params.rayleigh_alpha * m + params.rayleigh_beta * k;
  d.diagonal() += damp;

  Matrix b = Matrix::Zero(n, 1);
  b(n - 1, 0) = 1.0;
  Matrix c = Matrix::Zero(1, n);
  c(0, n - 1) = 1.0;
  Matrix x0 = Matrix::Zero(n, 1);
  x0(n - 1, 0) = 1.0;
  Matrix v0 = Matrix::Zero(n, 1);
  v0(0, 0) = 1.0;

  return SecondOrderSystem(m, d, k, b, c, x0, v0);
}

std::pair<Matrix, Matrix> building_init_from_projection(const Matrix& w_so) {
  check_finite(w_so, "building_init_from_projection input");
  if (w_so.rows() == 0 || w_so.cols() == 0) {
    throw InvalidParameter("building_init_from_projection: empty projection");
  }
  Eigen::JacobiSVD<Matrix> svd(w_so, Eigen::ComputeFullU);
  const Vector& sigma = svd.singularValues();
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > sigma(0) * 1e-12) ++rank;
  if (rank >= w_so.rows()) {
    throw FullRank("building_init_from_projection: projection has full row "
                   "rank, no orthogonal direction exists");
  }
  const Matrix column = svd.matrixU().col(rank);
  return {column, column};
}

}  // namespace somor
