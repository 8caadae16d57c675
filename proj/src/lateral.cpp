#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/geometry.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/special.hpp"
#include "casimir/units.hpp"

namespace casimir::geometry {

namespace {

using reflection::PlateResponse;

enum class Polarization { TM, TE };

double coefficient(const PlateResponse& r, Polarization p, double y) {
  const auto v = r.at(y);
  return p == Polarization::TM ? v.tm : v.te;
}

// (1/n^2) int_{n zeta}^inf t e^{-t} I_1(beta t) r(t/n)^{2n} dt for one polarization,
// or both when `p` is empty.
struct Harmonic {
  const PlateResponse& response;
  double beta;
  double rel_tol;

  double operator()(int n, std::optional<Polarization> p) const {
    const double decay = 1.0 - beta;
    const double lo = n * response.zeta();
    auto integrand = [&](double t) {
      const double y = t / n;
      double reflect;
      if (p) {
        const double r = coefficient(response, *p, y);
        reflect = std::pow(r * r, n);
      } else {
        const auto r = response.at(y);
        reflect = std::pow(r.tm * r.tm, n) + std::pow(r.te * r.te, n);
      }
      return t * std::exp(-decay * t) * numerics::bessel_i1_scaled(beta * t) * reflect;
    };
    const std::array<double, 5> breaks{lo, lo + 1.0 / decay, lo + 5.0 / decay, lo + 20.0 / decay,
                                       lo + 60.0 / decay};
    numerics::QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    const auto res = numerics::integrate(integrand, std::span<const double>(breaks), opt);
    if (!res.converged) throw NumericalError("lateral-force quadrature did not converge");
    return res.value / (static_cast<double>(n) * n);
  }
};

// sum_n (1/n^2) int_0^inf t e^{-t} I_1(beta t) r^{2n} dt for y-independent r.
double constant_series(double r, double beta) {
  return numerics::dilog(r * r) * beta / std::pow(1.0 - beta * beta, 1.5);
}

// Series whose terms approach c/n^2 (zero-frequency coefficient tending to
// |r| = 1 as y -> 0). Direct terms up to N, then a fit
// n^2 t_n = c + d/n + e/n^2 through n = N/4, N/2, N summed with zeta tails.
double accelerated_series(const Harmonic& h, Polarization p, const LateralOptions& opt,
                          int& max_harmonic) {
  std::vector<double> terms{0.0};  // 1-based
  auto extend = [&](int upto) {
    for (int n = static_cast<int>(terms.size()); n <= upto; ++n) terms.push_back(h(n, p));
  };
  double previous = 0.0;
  bool have_previous = false;
  for (int big_n = 32; big_n <= opt.max_n; big_n *= 2) {
    extend(big_n);
    max_harmonic = std::max(max_harmonic, big_n);
    double direct = 0.0;
    for (int n = big_n; n >= 1; --n) direct += terms[static_cast<std::size_t>(n)];
    const std::array<int, 3> nodes{big_n / 4, big_n / 2, big_n};
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i) {
      const double n = nodes[static_cast<std::size_t>(i)];
      g[static_cast<std::size_t>(i)] = n * n * terms[static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)])];
    }
    // Solve c + d u + e u^2 = g at u = 1/n (Newton divided differences).
    const double u0 = 1.0 / nodes[0];
    const double u1 = 1.0 / nodes[1];
    const double u2 = 1.0 / nodes[2];
    const double f01 = (g[1] - g[0]) / (u1 - u0);
    const double f12 = (g[2] - g[1]) / (u2 - u1);
    const double e = (f12 - f01) / (u2 - u0);
    const double d = f01 - e * (u0 + u1);
    const double c = g[0] - d * u0 - e * u0 * u0;
    const double tail = c * numerics::zeta_tail(2.0, big_n) + d * numerics::zeta_tail(3.0, big_n) +
                        e * numerics::zeta_tail(4.0, big_n);
    const double total = direct + tail;
    if (have_previous && std::abs(total - previous) <= opt.n_tol * std::abs(total)) return total;
    previous = total;
    have_previous = true;
  }
  throw NumericalError("zero-frequency lateral-force series did not converge", 0);
}

// Plain series for decaying terms: stop at the first term below n_tol * sum.
double direct_series(const Harmonic& h, const LateralOptions& opt, int l, double a_nm,
                     int& max_harmonic) {
  double sum = 0.0;
  for (int n = 1; n <= opt.max_n; ++n) {
    const double t = h(n, std::nullopt);
    sum += t;
    if (std::abs(t) <= opt.n_tol * std::abs(sum)) {
      max_harmonic = std::max(max_harmonic, n);
      return sum;
    }
  }
  throw NumericalError("lateral-force harmonic series did not converge", l, a_nm);
}

}  // namespace

LateralResult lateral_force(const PlatePairSpec& plates, const SphereSpec& sphere,
                            const CorrugationSpec& corr, const MatsubaraGrid& grid,
                            const LateralOptions& options) {
  if (!(plates.plate1 == plates.plate2)) {
    throw std::invalid_argument("lateral force is only supported for identical plate materials");
  }
  const double a = sphere.a_nm;
  if (!(a > 0.0)) throw std::invalid_argument("separation must be positive");
  if (!(sphere.radius_um > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (!(corr.period > 0.0)) throw std::invalid_argument("corrugation period must be positive");
  if (corr.amplitude_plate < 0.0 || corr.amplitude_sphere < 0.0) {
    throw std::invalid_argument("corrugation amplitudes must be non-negative");
  }
  LateralResult out;
  out.beta = beta(a, corr);
  out.pfa_warning = 2.0 * units::pi * a / corr.period > 0.3;
  const double sine = reduced_sine(corr.phase);
  if (sine == 0.0 || corr.amplitude_plate == 0.0 || corr.amplitude_sphere == 0.0) return out;
  if (!(out.beta < 1.0)) {
    throw NumericalError("lateral-force series diverges for beta >= 1 (beta=" +
                             std::to_string(out.beta) + ")",
                         std::nullopt, a);
  }
  const double b = out.beta;
  std::vector<int> harmonics(static_cast<std::size_t>(grid.max_terms), 0);
  auto term = [&](int l) -> lifshitz::TermValue {
    const PlateResponse response(plates.plate1, l, grid.temperature, a, plates.use_modified_tm);
    const Harmonic h{response, b, grid.quad_rel_tol};
    int& used = harmonics[static_cast<std::size_t>(l)];
    try {
      if (l > 0) return {direct_series(h, options, l, a, used), 0.0, false};
      const auto r = response.at(1.0);
      double value = response.tm_constant()
                         ? constant_series(r.tm, b)
                         : accelerated_series(h, Polarization::TM, options, used);
      value += response.te_constant() ? constant_series(r.te, b)
                                      : accelerated_series(h, Polarization::TE, options, used);
      return {value, 0.0, response.used_static_probe()};
    } catch (const NumericalError& e) {
      if (e.matsubara_index()) throw;
      throw NumericalError(e.what(), l, a);
    }
  };
  const auto sum = lifshitz::matsubara_sum(grid, term, a);
  out.matsubara_terms = sum.terms_used;
  for (int l = 0; l < sum.terms_used; ++l) {
    out.max_harmonic = std::max(out.max_harmonic, harmonics[static_cast<std::size_t>(l)]);
  }
  const double radius_nm = sphere.radius_um * units::nm_per_um;
  const double prefactor = units::pi * units::thermal_energy(grid.temperature) * radius_nm *
                           corr.amplitude_plate * corr.amplitude_sphere /
                           (2.0 * a * a * a * corr.period * b);
  out.value = prefactor * sine * sum.value * units::force_to_si;
  return out;
}

}  // namespace casimir::geometry
