#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace casimir {

// Raised when a sum, quadrature or derivative fails to reach its tolerance.
// Carries the Matsubara index and separation of the failing point when known.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, std::optional<int> matsubara_index = {},
                          std::optional<double> separation_nm = {})
      : std::runtime_error(decorate(what, matsubara_index, separation_nm)),
        matsubara_index_(matsubara_index),
        separation_nm_(separation_nm) {}

  std::optional<int> matsubara_index() const { return matsubara_index_; }
  std::optional<double> separation_nm() const { return separation_nm_; }

 private:
  static std::string decorate(const std::string& what, std::optional<int> l,
                              std::optional<double> a) {
    std::string out = what;
    if (l || a) {
      out += " (";
      if (l) out += "l=" + std::to_string(*l);
      if (l && a) out += ", ";
      if (a) out += "a=" + std::to_string(*a) + " nm";
      out += ")";
    }
    return out;
  }

  std::optional<int> matsubara_index_;
  std::optional<double> separation_nm_;
};

// Malformed input data (optical tables, experiment tables).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir

#include <vector>

namespace casimir {

// Invalid configuration; lists every violation found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace casimir
