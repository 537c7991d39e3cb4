#pragma once

// Plain-text key-value documents shared by scenario files and experiment
// configs.
//
//   document := { line }
//   line     := blank | '#' comment | key '=' value
//   key      := [A-Za-z0-9_.]+
//   value    := rest of the line, surrounding whitespace trimmed
//
// Keys are unique. Order is preserved when writing.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmflow {

class KeyValueDocument {
 public:
  /// Throws ConfigError with the offending line number.
  static KeyValueDocument parse(std::string_view text);
  static KeyValueDocument load(const std::string& path);

  void set(std::string key, std::string value);
  bool contains(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  /// Typed accessors; throw ConfigError on a missing key or a malformed value.
  std::string require(std::string_view key) const;
  double require_double(std::string_view key) const;
  long long require_int(std::string_view key) const;

  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

/// 17 significant digits: round-trips every double exactly.
std::string format_exact(double v);

}  // namespace qmflow
