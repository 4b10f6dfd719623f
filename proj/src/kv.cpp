// SPDX-License-Identifier: Apache-2.0
//
// emct: electromagnetic coherence-time analysis for mobile channels

#include "emct/kv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "emct/errors.hpp"

namespace emct::kv {

Value Value::boolean(bool v) {
  Value out;
  out.kind = Kind::boolean;
  out.b = v;
  return out;
}
Value Value::integer(long long v) {
  Value out;
  out.kind = Kind::integer;
  out.i = v;
  return out;
}
Value Value::real(double v) {
  Value out;
  out.kind = Kind::real;
  out.d = v;
  return out;
}
Value Value::string_(std::string v) {
  Value out;
  out.kind = Kind::string;
  out.s = std::move(v);
  return out;
}
Value Value::list(std::vector<Value> v) {
  Value out;
  out.kind = Kind::list;
  out.items = std::move(v);
  return out;
}

bool Value::as_bool(const std::string& path) const {
  if (kind != Kind::boolean) throw config_error(path + ": expected a boolean");
  return b;
}

long long Value::as_int(const std::string& path) const {
  if (kind != Kind::integer) throw config_error(path + ": expected an integer");
  return i;
}

double Value::as_real(const std::string& path) const {
  if (kind == Kind::real) return d;
  if (kind == Kind::integer) return double(i);
  throw config_error(path + ": expected a number");
}

const std::string& Value::as_string(const std::string& path) const {
  if (kind != Kind::string) throw config_error(path + ": expected a string");
  return s;
}

std::vector<double> Value::as_real_list(const std::string& path) const {
  if (kind != Kind::list) throw config_error(path + ": expected a list of numbers");
  std::vector<double> out;
  out.reserve(items.size());
  for (const Value& v : items) out.push_back(v.as_real(path));
  return out;
}

std::vector<std::string> Value::as_string_list(const std::string& path) const {
  if (kind != Kind::list) throw config_error(path + ": expected a list of strings");
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const Value& v : items) out.push_back(v.as_string(path));
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

Value parse_scalar(const std::string& tok, int line) {
  if (tok == "true") return Value::boolean(true);
  if (tok == "false") return Value::boolean(false);
  {
    long long i = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), i);
    if (ec == std::errc() && p == tok.data() + tok.size()) return Value::integer(i);
  }
  {
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() + tok.size() && !tok.empty()) return Value::real(d);
  }
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
    return Value::string_(tok.substr(1, tok.size() - 2));
  for (char c : tok)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']' ||
        c == '=' || c == '"')
      throw config_error("line " + std::to_string(line) + ": malformed value '" + tok + "'");
  return Value::string_(tok);
}

Value parse_value(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (v.empty()) throw config_error("line " + std::to_string(line) + ": missing value");
  if (v.front() == '[') {
    if (v.back() != ']') throw config_error("line " + std::to_string(line) + ": unterminated list");
    std::vector<Value> items;
    const std::string body = v.substr(1, v.size() - 2);
    std::string tok;
    std::istringstream iss(body);
    while (std::getline(iss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty())
        throw config_error("line " + std::to_string(line) + ": empty list element");
      items.push_back(parse_scalar(tok, line));
    }
    return Value::list(std::move(items));
  }
  return parse_scalar(v, line);
}

std::string serialize_scalar(const Value& v) {
  switch (v.kind) {
    case Value::Kind::boolean: return v.b ? "true" : "false";
    case Value::Kind::integer: return std::to_string(v.i);
    case Value::Kind::real: return format_real(v.d);
    case Value::Kind::string: return v.s;
    case Value::Kind::list: break;
  }
  throw config_error("nested lists are not supported");
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Document parse(const std::string& text) {
  Document doc;
  std::istringstream iss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    if (!valid_key(key))
      throw config_error("line " + std::to_string(lineno) + ": invalid key '" + key + "'");
    if (doc.count(key))
      throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    doc.emplace(key, parse_value(t.substr(eq + 1), lineno));
  }
  return doc;
}

std::string serialize(const Document& doc) {
  std::string out;
  for (const auto& [key, value] : doc) {
    out += key;
    out += " = ";
    if (value.kind == Value::Kind::list) {
      out += '[';
      for (std::size_t i = 0; i < value.items.size(); ++i) {
        if (i) out += ", ";
        out += serialize_scalar(value.items[i]);
      }
      out += ']';
    } else {
      out += serialize_scalar(value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace emct::kv
