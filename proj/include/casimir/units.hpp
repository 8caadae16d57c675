#pragma once

// Internal unit system: frequencies in eV (hbar*omega), lengths in nm,
// temperatures in K. Conversions to SI happen only at result boundaries.

#include <numbers>

namespace casimir::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double hbar_c = 197.3270;            // eV nm
inline constexpr double boltzmann = 8.617333262e-5;   // eV / K
inline constexpr double electron_volt = 1.602176634e-19;  // J

inline constexpr double nm_per_um = 1.0e3;
inline constexpr double m_per_nm = 1.0e-9;
inline constexpr double nm3_per_cm3 = 1.0e21;

// eV/nm^2 -> J/m^2, eV/nm^3 -> Pa, eV/nm -> N, eV/nm^2/K -> J/(m^2 K)
inline constexpr double energy_per_area_to_si = electron_volt / (m_per_nm * m_per_nm);
inline constexpr double pressure_to_si = energy_per_area_to_si / m_per_nm;
inline constexpr double force_to_si = electron_volt / m_per_nm;

inline constexpr double thermal_energy(double temperature) { return boltzmann * temperature; }

// First Matsubara frequency 2 pi k_B T in eV.
inline constexpr double matsubara_spacing(double temperature) {
  return 2.0 * pi * boltzmann * temperature;
}

}  // namespace casimir::units
