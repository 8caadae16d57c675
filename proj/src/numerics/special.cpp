#include "casimir/numerics/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace casimir::numerics {

namespace {

constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;

double polylog_series(double x, int order) {
  double sum = 0.0;
  double power = 1.0;
  for (int n = 1; n < 100000; ++n) {
    power *= x;
    const double term = power / std::pow(static_cast<double>(n), order);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Li_3(e^mu) for -2 pi < mu <= 0, expansion about mu = 0.
double polylog3_near_one(double mu) {
  if (mu == 0.0) return zeta3;
  // zeta(3 - k) for k = 3..16
  static constexpr std::array<double, 14> zeta_negative = {
      -0.5,           -1.0 / 12.0, 0.0, 1.0 / 120.0, 0.0, -1.0 / 252.0, 0.0,
      1.0 / 240.0,    0.0,         -1.0 / 132.0, 0.0, 691.0 / 32760.0, 0.0,
      -1.0 / 12.0};
  double result = zeta3 + zeta2 * mu + 0.5 * mu * mu * (1.5 - std::log(-mu));
  double power = mu * mu;
  double factorial = 2.0;
  for (int k = 3; k <= 16; ++k) {
    power *= mu;
    factorial *= k;
    result += zeta_negative[k - 3] * power / factorial;
  }
  return result;
}

}  // namespace

double polylog3(double x) {
  if (x > 1.0 || x < -1.0) throw std::domain_error("polylog3: argument outside [-1, 1]");
  if (x < 0.0) return 0.25 * polylog3(x * x) - polylog3(-x);
  if (x > 0.5) return polylog3_near_one(std::log(x));
  return polylog_series(x, 3);
}

double dilog(double x) {
  if (x > 1.0 || x < -1.0) throw std::domain_error("dilog: argument outside [-1, 1]");
  if (x == 1.0) return zeta2;
  if (x < -0.5) return 0.5 * dilog(x * x) - dilog(-x);
  if (x > 0.5) return zeta2 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  return polylog_series(x, 2);
}

double bessel_i1_scaled(double z) {
  if (z < 0.0) return -bessel_i1_scaled(-z);
  if (z == 0.0) return 0.0;
  if (z < 20.0) {
    const double half = 0.5 * z;
    const double half_sq = half * half;
    double term = half;
    double sum = term;
    for (int k = 0; k < 200; ++k) {
      term *= half_sq / ((k + 1.0) * (k + 2.0));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-z);
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (odd * odd - 4.0) / (8.0 * k * z);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

double zeta_tail(double s, int N) {
  // Direct terms up to M, then Euler-Maclaurin from M on.
  const int m = std::max(N, 64);
  double head = 0.0;
  for (int k = m; k > N; --k) head += std::pow(k, -s);
  const double n = m;
  const double lead = std::pow(n, 1.0 - s) / (s - 1.0);
  const double ns = std::pow(n, -s);
  return head + lead - 0.5 * ns + s * ns / (12.0 * n) -
         s * (s + 1.0) * (s + 2.0) * ns / (720.0 * n * n * n);
}

}  // namespace casimir::numerics
