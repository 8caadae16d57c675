#include "casimir/optics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "casimir/error.hpp"
#include "casimir/numerics/parallel.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir::optics {

namespace {

constexpr double kk_rel_tol = 1e-10;
// Extrapolation segment spans 46 e-folds below the first sample.
constexpr double log_depth = 46.0;

double drude_segment(const DrudeExtrapolation& d, double omega_join, double xi) {
  const double wp2g = d.plasma_frequency * d.plasma_frequency * d.relaxation;
  const double g2 = d.relaxation * d.relaxation;
  const double xi2 = xi * xi;
  // omega * Im eps / (xi^2 + omega^2) * d omega/du, u = ln omega
  auto integrand = [&](double u) {
    const double w = std::exp(u);
    const double w2 = w * w;
    return wp2g * w / ((w2 + g2) * (w2 + xi2));
  };
  const double u_hi = std::log(omega_join);
  const double u_lo = u_hi - log_depth;
  std::vector<double> breaks{u_lo};
  for (double scale : {d.relaxation, xi}) {
    const double u = std::log(scale);
    if (u > u_lo && u < u_hi) breaks.push_back(u);
  }
  breaks.push_back(u_hi);
  std::sort(breaks.begin(), breaks.end());
  numerics::QuadratureOptions opt;
  opt.rel_tol = kk_rel_tol;
  const auto res = numerics::integrate(integrand, std::span<const double>(breaks), opt);
  // Below exp(u_lo) the integrand is flat in omega: wp^2 gamma / (gamma^2 xi^2).
  const double below = wp2g / (g2 * xi2) * std::exp(u_lo);
  return res.value + below;
}

double table_segment(const OpticalDataTable& t, double xi) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  std::vector<double> log_omega(n);
  for (std::size_t i = 0; i < n; ++i) log_omega[i] = std::log(t.omega[i]);
  std::vector<double> exponent(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (t.im_eps[i] > 0.0 && t.im_eps[i + 1] > 0.0) {
      exponent[i] = std::log(t.im_eps[i + 1] / t.im_eps[i]) / (log_omega[i + 1] - log_omega[i]);
    }
  }
  const double xi2 = xi * xi;
  auto integrand = [&](double u) {
    auto it = std::upper_bound(log_omega.begin(), log_omega.end(), u);
    std::size_t i = it == log_omega.begin() ? 0 : static_cast<std::size_t>(it - log_omega.begin()) - 1;
    i = std::min(i, n - 2);
    const double w = std::exp(u);
    double im;
    if (t.im_eps[i] > 0.0 && t.im_eps[i + 1] > 0.0) {
      im = t.im_eps[i] * std::exp(exponent[i] * (u - log_omega[i]));
    } else {
      const double s = (w - t.omega[i]) / (t.omega[i + 1] - t.omega[i]);
      im = t.im_eps[i] + s * (t.im_eps[i + 1] - t.im_eps[i]);
    }
    const double w2 = w * w;
    return im * w2 / (xi2 + w2);
  };
  numerics::QuadratureOptions opt;
  opt.rel_tol = kk_rel_tol;
  opt.max_intervals = static_cast<int>(std::max<std::size_t>(4000, 4 * n));
  return numerics::integrate(integrand, std::span<const double>(log_omega), opt).value;
}

// int_W^inf omega * I W^3 omega^-3 / (xi^2 + omega^2) d omega
double tail_segment(double omega_last, double im_last, double xi) {
  if (im_last == 0.0) return 0.0;
  const double W = omega_last;
  const double x = xi / W;
  double shape;  // W^3 * int_W^inf omega^-2 / (xi^2 + omega^2) d omega
  if (x < 1e-3) {
    const double x2 = x * x;
    shape = 1.0 / 3.0 - x2 / 5.0 + x2 * x2 / 7.0;
  } else {
    shape = (1.0 - std::atan(x) / x) / (x * x);
  }
  return im_last * shape;
}

}  // namespace

double im_eps_from_nk(double n_re, double n_im) { return 2.0 * n_re * n_im; }

double drude_im_eps(const DrudeExtrapolation& d, double omega) {
  const double g = d.relaxation;
  return d.plasma_frequency * d.plasma_frequency * g / (omega * (omega * omega + g * g));
}

void validate(const OpticalDataTable& table) {
  if (table.omega.empty()) throw ParseError("empty table");
  if (table.omega.size() != table.im_eps.size()) {
    throw ParseError("optical table columns have different lengths");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table.omega[i] > 0.0)) {
      throw ParseError("row " + std::to_string(i + 1) + ": frequency must be positive");
    }
    if (!(table.im_eps[i] >= 0.0)) {
      throw ParseError("row " + std::to_string(i + 1) + ": Im eps must be non-negative");
    }
    if (i > 0 && !(table.omega[i] > table.omega[i - 1])) {
      throw ParseError("row " + std::to_string(i + 1) + ": frequencies must strictly increase");
    }
  }
}

double kramers_kronig(const OpticalDataTable& table, const ExtrapolationSpec& ext, double xi) {
  validate(table);
  if (!(xi > 0.0)) throw std::domain_error("Kramers-Kronig transform requires xi > 0");
  double integral = 0.0;
  if (ext.drude) {
    if (!(ext.drude->relaxation > 0.0) || !(ext.drude->plasma_frequency > 0.0)) {
      throw std::invalid_argument("Drude extrapolation requires plasma frequency and relaxation > 0");
    }
    integral += drude_segment(*ext.drude, table.omega.front(), xi);
  }
  integral += table_segment(table, xi);
  integral += tail_segment(table.omega.back(), table.im_eps.back(), xi);
  return 1.0 + 2.0 / units::pi * integral;
}

std::vector<double> kramers_kronig(const OpticalDataTable& table, const ExtrapolationSpec& ext,
                                   const std::vector<double>& xi, int threads) {
  validate(table);
  std::vector<double> out(xi.size());
  numerics::parallel_for(0, xi.size(), threads,
                         [&](std::size_t i) { out[i] = kramers_kronig(table, ext, xi[i]); });
  return out;
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

}  // namespace

OpticalDataTable parse_optical_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open optical data file " + path.string());
  enum class Layout { Unknown, NK, ImEps } layout = Layout::Unknown;
  OpticalDataTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_csv(t);
    if (layout == Layout::Unknown) {
      for (auto& f : fields) {
        std::transform(f.begin(), f.end(), f.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      }
      if (fields == std::vector<std::string>{"omega_ev", "n", "k"}) {
        layout = Layout::NK;
      } else if (fields == std::vector<std::string>{"omega_ev", "im_eps"}) {
        layout = Layout::ImEps;
      } else {
        throw ParseError(path.string() + ":" + std::to_string(line_no) +
                         ": header must be 'omega_eV,n,k' or 'omega_eV,im_eps'");
      }
      continue;
    }
    const std::size_t expected = layout == Layout::NK ? 3 : 2;
    std::array<double, 3> v{};
    bool ok = fields.size() == expected;
    for (std::size_t i = 0; ok && i < expected; ++i) ok = parse_double(fields[i], v[i]);
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (!ok) throw ParseError(where + "malformed row '" + t + "'");
    if (!(v[0] > 0.0)) throw ParseError(where + "frequency must be positive");
    if (!table.omega.empty() && !(v[0] > table.omega.back())) {
      throw ParseError(where + "frequency out of order (must strictly increase)");
    }
    double im = 0.0;
    if (layout == Layout::NK) {
      if (v[2] < 0.0) throw ParseError(where + "extinction coefficient must be non-negative");
      im = im_eps_from_nk(v[1], v[2]);
    } else {
      im = v[1];
    }
    if (!(im >= 0.0)) throw ParseError(where + "Im eps must be non-negative");
    table.omega.push_back(v[0]);
    table.im_eps.push_back(im);
  }
  if (layout == Layout::Unknown) throw ParseError(path.string() + ": missing header row");
  if (table.omega.empty()) throw ParseError(path.string() + ": empty table");
  return table;
}

}  // namespace casimir::optics
