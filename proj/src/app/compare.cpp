#include "casimir/app/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "casimir/error.hpp"

namespace casimir::app {

namespace {

double slope(const TheoryCurve& t, std::size_t i) {
  return (t.value[i + 1] - t.value[i]) / (t.a[i + 1] - t.a[i]);
}

}  // namespace

ComparisonReport compare(const TheoryCurve& theory, const ExperimentTable& experiment,
                         double theory_sigma) {
  if (experiment.rows.empty()) throw std::invalid_argument("experiment table is empty");
  const std::size_t n = theory.a.size();
  if (n < 2 || theory.value.size() != n) {
    throw std::invalid_argument("theory curve needs at least two samples");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(theory.a[i] > theory.a[i - 1])) throw std::invalid_argument("theory abscissae must increase");
  }
  ComparisonReport report;
  std::size_t inside = 0;
  for (const auto& row : experiment.rows) {
    if (row.a < theory.a.front() || row.a > theory.a.back()) {
      std::ostringstream msg;
      msg << "experimental abscissa " << row.a << " nm lies outside the theory range ["
          << theory.a.front() << ", " << theory.a.back() << "] nm";
      throw std::invalid_argument(msg.str());
    }
    const auto hi = std::lower_bound(theory.a.begin(), theory.a.end(), row.a);
    const std::size_t j = static_cast<std::size_t>(hi - theory.a.begin());
    double value;
    double derivative;
    if (theory.a[j] == row.a) {
      value = theory.value[j];
      if (j == 0) {
        derivative = slope(theory, 0);
      } else if (j == n - 1) {
        derivative = slope(theory, n - 2);
      } else {
        derivative = 0.5 * (slope(theory, j - 1) + slope(theory, j));
      }
    } else {
      const std::size_t i = j - 1;
      derivative = slope(theory, i);
      value = theory.value[i] + derivative * (row.a - theory.a[i]);
    }
    ComparisonRow out;
    out.a = row.a;
    out.theory = value;
    out.experiment = row.value;
    out.difference = value - row.value;
    const double spread = row.sigma_a * std::abs(derivative);
    out.half_width = std::sqrt(row.sigma_value * row.sigma_value + spread * spread +
                               theory_sigma * theory_sigma);
    out.inside = std::abs(out.difference) <= out.half_width;
    if (out.inside) ++inside;
    report.rows.push_back(out);
  }
  report.fraction_inside = static_cast<double>(inside) / static_cast<double>(report.rows.size());
  return report;
}

ExperimentTable parse_experiment_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open experiment file " + path.string());
  ExperimentTable table;
  std::string line;
  int line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const std::string body = line.substr(first + 1);
      const auto key = body.find("confidence:");
      if (key != std::string::npos) {
        std::string label = body.substr(key + 11);
        label.erase(0, label.find_first_not_of(" \t"));
        label.erase(label.find_last_not_of(" \t") + 1);
        table.confidence = label;
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
      f.erase(0, f.find_first_not_of(" \t"));
      f.erase(f.find_last_not_of(" \t") + 1);
      fields.push_back(f);
    }
    if (!header) {
      if (fields != std::vector<std::string>{"a_nm", "value", "sigma_a_nm", "sigma_value"}) {
        fail("header must be 'a_nm,value,sigma_a_nm,sigma_value'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4) fail("expected 4 fields");
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(fields[i].c_str(), &end);
      if (fields[i].empty() || end != fields[i].c_str() + fields[i].size() || !std::isfinite(v[i])) {
        fail("malformed number '" + fields[i] + "'");
      }
    }
    if (v[2] < 0.0 || v[3] < 0.0) fail("uncertainties must be >= 0");
    if (!table.rows.empty() && !(v[0] > table.rows.back().a)) fail("separations must increase");
    table.rows.push_back({v[0], v[1], v[2], v[3]});
  }
  if (!header) throw ParseError(path.string() + ": missing header row");
  if (table.rows.empty()) throw ParseError(path.string() + ": empty table");
  return table;
}

}  // namespace casimir::app
