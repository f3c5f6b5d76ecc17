#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "crsphere/cutoffs.hpp"

namespace crsphere {

/// Flat key=value configuration.  Lines starting with '#' and blank lines are
/// ignored; whitespace around keys and values is trimmed.
class Config {
 public:
  static Config parse(std::istream& in) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string val = trim(trimmed.substr(eq + 1));
      if (key.empty())
        throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
      cfg.values_[key] = val;
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    return parse(in);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
      throw std::runtime_error("config: bad number for " + key + ": " + it->second);
    return v;
  }

  int get_int(const std::string& key, int fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size())
      throw std::runtime_error("config: bad integer for " + key + ": " + it->second);
    return v;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  static std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
  }

  std::map<std::string, std::string> values_;
};

/// Builds the working cutoff family from a config, falling back to defaults
/// for missing keys.  Recognized keys: phi.a phi.a2 phi.b2 phi.b cone.M
/// window.M1.
inline CutoffSet cutoffs_from_config(const Config& cfg) {
  const CutoffSet base = CutoffSet::defaults();
  CutoffSet out = base;
  const double a = cfg.get_double("phi.a", base.phi.support_lo());
  const double a2 = cfg.get_double("phi.a2", base.phi.plateau_lo());
  const double b2 = cfg.get_double("phi.b2", base.phi.plateau_hi());
  const double b = cfg.get_double("phi.b", base.phi.support_hi());
  out.phi = make_bump(a, a2, b2, b);
  out.M = cfg.get_double("cone.M", base.M);
  out.psi = cone_profile(out.M);
  out.M1 = cfg.get_double("window.M1", base.M1);
  return out;
}

}  // namespace crsphere
