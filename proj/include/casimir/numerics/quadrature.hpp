#pragma once

// Adaptive Gauss-Kronrod (10/21 point) quadrature on finite intervals,
// globally adaptive in the manner of QUADPACK's QAG.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace casimir::numerics {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600143744921, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Weights of the embedded 10-point Gauss rule at kronrod_nodes[1,3,5,7,9].
inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_21(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kronrod_weights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f_left{};
  std::array<double, 10> f_right{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kronrod_nodes[j];
    f_left[j] = f(center - dx);
    f_right[j] = f(center + dx);
    const double pair = f_left[j] + f_right[j];
    kronrod += kronrod_weights[j] * pair;
    abs_sum += kronrod_weights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[10] * std::abs(f_center - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kronrod_weights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
  }
  const double result = kronrod * half;
  const double result_abs = abs_sum * std::abs(half);
  const double result_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * result_abs, err);
  }
  return {lo, hi, result, err};
}

}  // namespace detail

// Integrates f over the union of [breaks[i], breaks[i+1]]; the breakpoints
// seed the initial panel set.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> breaks, const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (breaks.size() < 2) return out;
  std::priority_queue<detail::Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] == breaks[i]) continue;
    auto p = detail::gauss_kronrod_21(f, breaks[i], breaks[i + 1]);
    out.evaluations += 21;
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (total_err > tolerance() && !panels.empty()) {
    if (static_cast<int>(panels.size()) >= opt.max_intervals) {
      out.converged = false;
      break;
    }
    const auto worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Panel cannot be split further in double precision.
      out.converged = false;
      break;
    }
    panels.pop();
    auto left = detail::gauss_kronrod_21(f, worst.lo, mid);
    auto right = detail::gauss_kronrod_21(f, mid, worst.hi);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum from the panels to shed the drift of the incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = err;
  if (out.converged) out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) * 1.0001;
  return out;
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  const std::array<double, 2> breaks{lo, hi};
  return integrate(f, std::span<const double>(breaks), opt);
}

}  // namespace casimir::numerics
