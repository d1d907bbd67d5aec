#include "somor/key_value_file.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "somor/errors.hpp"

namespace somor {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  KeyValueFile file;
  file.path_ = path;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": empty key");
    }
    if (file.values_.count(key) != 0) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": duplicate key '" + key + "'");
    }
    file.values_[key] = value;
    file.lines_[key] = line_no;
  }
  return file;
}

void KeyValueFile::fail(const std::string& key, const std::string& msg) const {
  const auto it = lines_.find(key);
  const std::string where =
      it == lines_.end() ? path_.string()
                         : path_.string() + ":" + std::to_string(it->second);
  throw ParseError(where + ": key '" + key + "': " + msg);
}

bool KeyValueFile::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::string KeyValueFile::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail(key, "missing");
  return strip_quotes(it->second);
}

double KeyValueFile::get_number(const std::string& key) const {
  const std::string raw = get_string(key);
  try {
    size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size() || !std::isfinite(v)) fail(key, "not a number");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, "not a number");
  }
}

Vector KeyValueFile::get_vector(const std::string& key) const {
  std::string raw = get_string(key);
  if (!raw.empty() && raw.front() == '[' && raw.back() == ']') {
    raw = raw.substr(1, raw.size() - 2);
  }
  std::vector<double> entries;
  std::stringstream ss(raw);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) fail(key, "empty vector entry");
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(v)) {
        fail(key, "bad vector entry '" + token + "'");
      }
      entries.push_back(v);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      fail(key, "bad vector entry '" + token + "'");
    }
  }
  Vector out(static_cast<Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) {
    out(static_cast<Index>(i)) = entries[i];
  }
  return out;
}

std::string KeyValueFile::get_string_or(const std::string& key,
                                        const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double KeyValueFile::get_number_or(const std::string& key,
                                   double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

std::vector<std::string> KeyValueFile::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [key, value] : values_) out.push_back(key);
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_vector(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(v(i));
  }
  return out;
}

}  // namespace somor
