#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "somor/types.hpp"

namespace somor {

// Flat `key = value` text file with '#' comments. Keys are dotted
// identifiers; values are numbers, bare or quoted strings, or
// comma-separated number lists (optionally bracketed). One parser serves the
// system manifests and the reduced-model metadata.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path directory() const { return path_.parent_path(); }

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  Vector get_vector(const std::string& key) const;

  std::string get_string_or(const std::string& key,
                            const std::string& fallback) const;
  double get_number_or(const std::string& key, double fallback) const;

  std::vector<std::string> keys() const;

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;
  std::filesystem::path path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, long> lines_;
};

// Serialization helpers shared by manifest/metadata writers.
std::string format_number(double v);           // 17 significant digits
std::string format_vector(const Vector& v);    // comma-separated

}  // namespace somor
