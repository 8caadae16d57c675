#pragma once

// Permittivity along the imaginary axis from tabulated optical data via the
// Kramers-Kronig relation
//
//   eps(i xi) = 1 + (2/pi) int_0^inf omega Im eps(omega) / (xi^2 + omega^2) d omega.
//
// The integral is split into three segments:
//   [0, omega_first)        Drude extrapolation (optional)
//   [omega_first, omega_last]  table, Im eps piecewise power law (log-log linear)
//   (omega_last, inf)       Im eps ~ omega^-3 matched at the last sample

#include <filesystem>
#include <optional>
#include <vector>

namespace casimir::optics {

struct OpticalDataTable {
  std::vector<double> omega;   ///< eV, strictly increasing, > 0
  std::vector<double> im_eps;  ///< >= 0

  std::size_t size() const { return omega.size(); }
};

struct DrudeExtrapolation {
  double plasma_frequency = 0.0;  ///< eV
  double relaxation = 0.0;        ///< eV, > 0
};

struct ExtrapolationSpec {
  std::optional<DrudeExtrapolation> drude;  ///< none: Im eps = 0 below the table
};

inline constexpr const char* high_frequency_tail = "Im eps ~ omega^-3 above last sample";

double im_eps_from_nk(double n_re, double n_im);

/// Drude Im eps(omega) = wp^2 gamma / (omega (omega^2 + gamma^2)).
double drude_im_eps(const DrudeExtrapolation& d, double omega);

/// Throws ParseError on empty or non-monotone tables, negative Im eps.
void validate(const OpticalDataTable& table);

double kramers_kronig(const OpticalDataTable& table, const ExtrapolationSpec& ext, double xi);

std::vector<double> kramers_kronig(const OpticalDataTable& table, const ExtrapolationSpec& ext,
                                   const std::vector<double>& xi, int threads = 1);

/// CSV with a header of either `omega_eV,n,k` or `omega_eV,im_eps`; `#`
/// comment lines allowed.
OpticalDataTable parse_optical_csv(const std::filesystem::path& path);

}  // namespace casimir::optics
