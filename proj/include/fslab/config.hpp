#pragma once

/// @file config.hpp
/// Sectioned key=value experiment configs.  Minimal TOML-ish dialect:
///   # comment            [section]
///   key = 3.5            key = [1, 2, 3]
///   key = "text"         key = true
/// Every key remembers its source line for error context; readers reject
/// unknown keys against a per-command schema.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fslab {

struct ConfigValue {
  std::variant<bool, long long, double, std::string, std::vector<double>> v;
  int line = 0;

  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_int() const { return std::holds_alternative<long long>(v); }
  bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_list() const { return std::holds_alternative<std::vector<double>>(v); }
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  double get_real(const std::string& section, const std::string& key) const;
  double get_real_or(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int_or(const std::string& section, const std::string& key,
                       long long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_str(const std::string& section, const std::string& key) const;
  std::string get_str_or(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  std::vector<double> get_list_or(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback) const;

  /// Throws std::invalid_argument naming the offending key and line when the
  /// config holds a section/key outside the schema (section -> allowed keys).
  void require_known(const std::map<std::string, std::set<std::string>>& schema) const;

  /// Sections/keys/values as parsed (section "" holds top-level keys).
  const std::map<std::string, std::map<std::string, ConfigValue>>& sections() const {
    return sections_;
  }
  const std::string& origin() const { return origin_; }

  /// Mutable access used by sweeps to override per-point values.
  void set_real(const std::string& section, const std::string& key, double value);

 private:
  std::map<std::string, std::map<std::string, ConfigValue>> sections_;
  std::string origin_;
  [[noreturn]] void fail_missing(const std::string& section, const std::string& key,
                                 const char* type) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
};

} // namespace fslab
