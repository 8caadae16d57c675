#pragma once

namespace casimir::numerics {

inline constexpr double zeta3 = 1.2020569031595942853997381615114;

// Trilogarithm Li_3(x) for -1 <= x <= 1 (power series, accelerated near 1).
double polylog3(double x);

// Dilogarithm Li_2(x) for x <= 1.
double dilog(double x);

// Exponentially scaled modified Bessel function e^{-z} I_1(z), z >= 0.
// Power series below z = 20, asymptotic expansion above.
double bessel_i1_scaled(double z);

// sum_{n > N} n^{-s} for s > 1, N >= 1 (Euler-Maclaurin tail).
double zeta_tail(double s, int N);

}  // namespace casimir::numerics
