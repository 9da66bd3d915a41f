#include "wglab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wglab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double_at(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a number, got '" + tok + "'");
  }
}

} // namespace

Config Config::parse(std::istream& is) {
  Config c;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (key.find_first_of(" \t") != std::string::npos)
      throw ConfigError(line, "key '" + key + "' contains whitespace");
    if (c.entries_.count(key))
      throw ConfigError(line, "duplicate key '" + key + "' (first at line " +
                                  std::to_string(c.entries_[key].line) + ")");
    c.entries_[key] = {value, line};
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  return parse(is);
}

Config Config::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

const Config::Entry& Config::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(0, "missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double Config::get_double(const std::string& key) const {
  const Entry& e = require(key);
  return parse_double_at(e.value, e.line);
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int64_t Config::get_int(const std::string& key) const {
  const Entry& e = require(key);
  try {
    size_t pos = 0;
    int64_t v = std::stoll(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(e.line, "expected an integer, got '" + e.value + "'");
  }
}

int64_t Config::get_int(const std::string& key, int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = require(key);
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(e.line, "expected a boolean, got '" + e.value + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const Entry& e = require(key);
  std::string s = e.value;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(parse_double_at(tok, e.line));
  if (out.empty()) throw ConfigError(e.line, "empty list for key '" + key + "'");
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            const std::vector<double>& fallback) const {
  return has(key) ? get_double_list(key) : fallback;
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = {value, 0};
}

int Config::line_of(const std::string& key) const { return require(key).line; }

} // namespace wglab
