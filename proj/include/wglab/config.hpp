#ifndef WGLAB_CONFIG_HPP
#define WGLAB_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wglab {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Flat key-value text config:
//   key = value            # comment
// Lists are explicit comma- or space-separated values on one line.  Duplicate
// keys and malformed lines are schema errors reported with line numbers.
class Config {
 public:
  static Config parse(std::istream& is);
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  // Apply overrides of the form key=value (CLI/environment injection).
  void set(const std::string& key, const std::string& value);

  int line_of(const std::string& key) const; // 0 when injected via set()

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;

  const Entry& require(const std::string& key) const;
};

} // namespace wglab

#endif
