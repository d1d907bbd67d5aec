#include "somor/manifest.hpp"

#include <cmath>
#include <string>

#include "somor/analysis.hpp"
#include "somor/key_value_file.hpp"
#include "somor/matrix_market.hpp"

namespace somor {

namespace {

Matrix load_required(const KeyValueFile& kv, const std::string& key) {
  if (!kv.has(key)) {
    throw ParseError(kv.path().string() + ": missing matrix key '" + key + "'");
  }
  return read_matrix_market(kv.directory() / kv.get_string(key));
}

Matrix load_optional(const KeyValueFile& kv, const std::string& key,
                     Index rows) {
  if (!kv.has(key)) return Matrix(rows, 0);
  return read_matrix_market(kv.directory() / kv.get_string(key));
}

void check_pair(bool ok, const std::string& what) {
  if (!ok) throw DimensionMismatch("manifest: dimension mismatch " + what);
}

}  // namespace

LoadedSystem read_manifest(const std::filesystem::path& path) {
  const KeyValueFile kv = KeyValueFile::parse(path);

  const Matrix m = load_required(kv, "M");
  const Matrix d = load_required(kv, "D");
  const Matrix k = load_required(kv, "K");
  const Matrix b = load_required(kv, "B");
  const Matrix c = load_required(kv, "C");
  const Index n = m.rows();
  const Matrix x0 = load_optional(kv, "X0", n);
  const Matrix v0 = load_optional(kv, "V0", n);

  check_pair(m.rows() == m.cols(), "M vs M (square)");
  check_pair(d.rows() == n && d.cols() == n, "D vs M");
  check_pair(k.rows() == n && k.cols() == n, "K vs M");
  check_pair(b.rows() == n, "B vs M");
  check_pair(c.cols() == n, "C vs M");
  check_pair(x0.rows() == n, "X0 vs M");
  check_pair(v0.rows() == n, "V0 vs M");

  SecondOrderSystem system(m, d, k, b, c, x0, v0,
                           SecondOrderSystem::StabilityPolicy::defer);

  const std::string kind = kv.get_string_or("input.kind", "zero");
  InputSignal input = InputSignal::zero(system.num_inputs());
  if (kind == "exponential") {
    input = InputSignal::exponential(kv.get_number("input.alpha"),
                                     kv.get_number("input.beta"),
                                     system.num_inputs());
  } else if (kind != "zero") {
    throw ParseError(kv.path().string() + ": unknown input.kind '" + kind +
                     "' (expected zero or exponential)");
  }

  const TimeGrid grid(0.0, kv.get_number_or("grid.t_end", kDefaultHorizon),
                      kv.get_number_or("grid.h", kDefaultStep));

  Vector z0 = kv.has("z0") ? kv.get_vector("z0")
                           : Vector::Ones(system.x0_cols()).eval();
  Vector w0 = kv.has("w0") ? kv.get_vector("w0")
                           : Vector::Ones(system.v0_cols()).eval();
  check_pair(z0.size() == system.x0_cols(), "z0 vs X0");
  check_pair(w0.size() == system.v0_cols(), "w0 vs V0");

  return {std::move(system), input, grid, std::move(z0), std::move(w0)};
}

double input_hinf_norm(const InputSignal& input) {
  switch (input.kind()) {
    case InputSignal::Kind::zero:
      return 0.0;
    case InputSignal::Kind::exponential:
      return hinf_exp_input(input.alpha(), input.beta()) *
             std::sqrt(static_cast<double>(input.channels()));
    case InputSignal::Kind::tabulated:
      throw InvalidParameter(
          "input_hinf_norm: no closed form for tabulated inputs");
  }
  throw InvalidParameter("input_hinf_norm: unknown input kind");
}

}  // namespace somor
