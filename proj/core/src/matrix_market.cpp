#include "somor/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "somor/errors.hpp"

namespace somor {

namespace {

struct LineReader {
  std::ifstream stream;
  std::string path;
  long line_no = 0;

  explicit LineReader(const std::filesystem::path& p)
      : stream(p), path(p.string()) {
    if (!stream) throw ParseError(path + ": cannot open file");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + msg);
  }

  // Next line that is neither blank nor a % comment (the header line is
  // consumed separately).
  bool next_data_line(std::string& out) {
    std::string line;
    while (std::getline(stream, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '%') continue;
      out = line;
      return true;
    }
    return false;
  }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_value(LineReader& reader, const std::string& token) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) reader.fail("trailing characters in '" + token + "'");
    if (!std::isfinite(v)) reader.fail("non-finite value '" + token + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    reader.fail("cannot parse number '" + token + "'");
  }
}

}  // namespace

Matrix read_matrix_market(const std::filesystem::path& path) {
  LineReader reader(path);

  std::string header;
  if (!std::getline(reader.stream, header)) reader.fail("empty file");
  reader.line_no = 1;
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") reader.fail("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") reader.fail("unsupported object '" + object + "'");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "array" && format != "coordinate") {
    reader.fail("unsupported format '" + format + "'");
  }
  if (field != "real") reader.fail("unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric") {
    reader.fail("unsupported symmetry '" + symmetry + "'");
  }
  const bool symmetric = symmetry == "symmetric";

  std::string line;
  if (!reader.next_data_line(line)) reader.fail("missing size line");
  std::istringstream size_stream(line);
  long rows = 0, cols = 0, nnz = 0;
  if (format == "array") {
    if (!(size_stream >> rows >> cols)) reader.fail("bad size line");
  } else {
    if (!(size_stream >> rows >> cols >> nnz)) reader.fail("bad size line");
  }
  if (rows < 1 || cols < 1) reader.fail("dimensions must be at least 1x1");
  if (symmetric && rows != cols) reader.fail("symmetric matrix must be square");

  Matrix a = Matrix::Zero(rows, cols);
  if (format == "array") {
    // Column-major entries; symmetric files store the lower triangle.
    long i = 0, j = 0;
    auto advance = [&]() {
      ++i;
      if (i >= rows) {
        ++j;
        i = symmetric ? j : 0;
      }
    };
    long expected = symmetric ? rows * (rows + 1) / 2 : rows * cols;
    long seen = 0;
    while (seen < expected) {
      if (!reader.next_data_line(line)) reader.fail("unexpected end of data");
      std::istringstream ls(line);
      std::string token;
      while (ls >> token) {
        if (seen >= expected) reader.fail("more entries than expected");
        const double v = parse_value(reader, token);
        a(i, j) = v;
        if (symmetric) a(j, i) = v;
        advance();
        ++seen;
      }
    }
  } else {
    for (long entry = 0; entry < nnz; ++entry) {
      if (!reader.next_data_line(line)) reader.fail("unexpected end of data");
      std::istringstream ls(line);
      long i = 0, j = 0;
      std::string token;
      if (!(ls >> i >> j >> token)) reader.fail("bad coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols) {
        reader.fail("coordinate out of range");
      }
      const double v = parse_value(reader, token);
      a(i - 1, j - 1) = v;
      if (symmetric) a(j - 1, i - 1) = v;
    }
  }
  return a;
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << " " << a.cols() << "\n";
  out << std::setprecision(17);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out << a(i, j) << "\n";
    }
  }
  if (!out) throw ParseError(path.string() + ": write failed");
}

}  // namespace somor
