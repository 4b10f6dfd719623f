// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace emct::kv {

/// One typed value of the flat key-value config format: booleans, integers,
/// reals, bare strings, or a bracketed list of scalars.
struct Value {
  enum class Kind { boolean, integer, real, string, list };

  Kind kind = Kind::string;
  bool b = false;
  long long i = 0;
  double d = 0;
  std::string s;
  std::vector<Value> items;

  static Value boolean(bool v);
  static Value integer(long long v);
  static Value real(double v);
  static Value string_(std::string v);
  static Value list(std::vector<Value> v);

  // Checked accessors; `path` feeds the error message.
  bool as_bool(const std::string& path) const;
  long long as_int(const std::string& path) const;
  double as_real(const std::string& path) const;  // accepts integers too
  const std::string& as_string(const std::string& path) const;
  std::vector<double> as_real_list(const std::string& path) const;
  std::vector<std::string> as_string_list(const std::string& path) const;
};

/// Dotted-path key -> value. Keys are unique; order is not significant and
/// serialization emits them sorted.
using Document = std::map<std::string, Value>;

/// Parses `key = value` lines ('#' comments, blank lines allowed). Throws
/// config_error with a line reference on malformed input or duplicate keys.
Document parse(const std::string& text);

std::string serialize(const Document& doc);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_real(double v);

}  // namespace emct::kv
