#include "fslab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fslab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

ConfigValue parse_value(const std::string& raw, int line, const std::string& origin) {
  ConfigValue cv;
  cv.line = line;
  const std::string s = trim(raw);
  if (s.empty())
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ": empty value");

  if (s == "true") { cv.v = true; return cv; }
  if (s == "false") { cv.v = false; return cv; }

  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw std::invalid_argument(origin + ":" + std::to_string(line) + ": unterminated string");
    cv.v = s.substr(1, s.size() - 2);
    return cv;
  }

  if (s.front() == '[') {
    if (s.back() != ']')
      throw std::invalid_argument(origin + ":" + std::to_string(line) + ": unterminated list");
    std::vector<double> vals;
    std::string inner = s.substr(1, s.size() - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      double d;
      if (!parse_real(item, d))
        throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                    ": bad list element '" + item + "'");
      vals.push_back(d);
    }
    cv.v = std::move(vals);
    return cv;
  }

  long long ll;
  if (parse_int(s, ll)) { cv.v = ll; return cv; }
  double d;
  if (parse_real(s, d)) { cv.v = d; return cv; }
  cv.v = s;  // bare string
  return cv;
}

} // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty())
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty section name");
      cfg.sections_[section];  // materialize even if empty
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
    auto& sect = cfg.sections_[section];
    if (sect.count(key))
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  key + "' (first at line " +
                                  std::to_string(sect.at(key).line) + ")");
    sect.emplace(key, parse_value(s.substr(eq + 1), lineno, origin));
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path);
}

const ConfigValue* Config::find(const std::string& section, const std::string& key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  auto kit = sit->second.find(key);
  return kit == sit->second.end() ? nullptr : &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

void Config::fail_missing(const std::string& section, const std::string& key,
                          const char* type) const {
  throw std::invalid_argument(origin_ + ": missing or mistyped " + type + " key [" + section +
                              "] " + key);
}

double Config::get_real(const std::string& section, const std::string& key) const {
  const ConfigValue* cv = find(section, key);
  if (!cv) fail_missing(section, key, "numeric");
  if (cv->is_int()) return static_cast<double>(std::get<long long>(cv->v));
  if (std::holds_alternative<double>(cv->v)) return std::get<double>(cv->v);
  throw std::invalid_argument(origin_ + ":" + std::to_string(cv->line) + ": [" + section + "] " +
                              key + " must be numeric");
}

double Config::get_real_or(const std::string& section, const std::string& key,
                           double fallback) const {
  return has(section, key) ? get_real(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
  const ConfigValue* cv = find(section, key);
  if (!cv) fail_missing(section, key, "integer");
  if (!cv->is_int())
    throw std::invalid_argument(origin_ + ":" + std::to_string(cv->line) + ": [" + section +
                                "] " + key + " must be an integer");
  return std::get<long long>(cv->v);
}

long long Config::get_int_or(const std::string& section, const std::string& key,
                             long long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  const ConfigValue* cv = find(section, key);
  if (!cv) return fallback;
  if (!cv->is_bool())
    throw std::invalid_argument(origin_ + ":" + std::to_string(cv->line) + ": [" + section +
                                "] " + key + " must be true/false");
  return std::get<bool>(cv->v);
}

std::string Config::get_str(const std::string& section, const std::string& key) const {
  const ConfigValue* cv = find(section, key);
  if (!cv) fail_missing(section, key, "string");
  if (!cv->is_string())
    throw std::invalid_argument(origin_ + ":" + std::to_string(cv->line) + ": [" + section +
                                "] " + key + " must be a string");
  return std::get<std::string>(cv->v);
}

std::string Config::get_str_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get_str(section, key) : fallback;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
  const ConfigValue* cv = find(section, key);
  if (!cv) fail_missing(section, key, "list");
  if (cv->is_list()) return std::get<std::vector<double>>(cv->v);
  if (cv->is_number()) return {get_real(section, key)};  // singleton convenience
  throw std::invalid_argument(origin_ + ":" + std::to_string(cv->line) + ": [" + section + "] " +
                              key + " must be a numeric list");
}

std::vector<double> Config::get_list_or(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const {
  return has(section, key) ? get_list(section, key) : fallback;
}

void Config::require_known(const std::map<std::string, std::set<std::string>>& schema) const {
  for (const auto& [section, keys] : sections_) {
    auto sit = schema.find(section);
    if (sit == schema.end())
      throw std::invalid_argument(origin_ + ": unknown section [" + section + "]");
    for (const auto& [key, cv] : keys)
      if (!sit->second.count(key))
        throw std::invalid_argument(origin_ + ":" + std::to_string(cv.line) +
                                    ": unknown key '" + key + "' in section [" + section + "]");
  }
}

void Config::set_real(const std::string& section, const std::string& key, double value) {
  ConfigValue cv;
  cv.v = value;
  cv.line = 0;
  sections_[section][key] = cv;
}

} // namespace fslab
