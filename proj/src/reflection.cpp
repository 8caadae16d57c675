#include "casimir/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/units.hpp"

namespace casimir::reflection {

using materials::StaticLimit;

double ImaginaryFreqPoint::q() const { return std::hypot(k_perp, xi / units::hbar_c); }

Reflection fresnel_kernel(double eps, double mu, double q, double xi_c) {
  // k - q computed directly to keep eps ~ 1 accurate.
  const double d = (eps * mu - 1.0) * xi_c * xi_c;
  const double k = std::sqrt(q * q + d);
  const double k_minus_q = d / (k + q);
  Reflection r;
  r.tm = ((eps - 1.0) * q - k_minus_q) / ((eps + 1.0) * q + k_minus_q);
  r.te = ((mu - 1.0) * q - k_minus_q) / ((mu + 1.0) * q + k_minus_q);
  return r;
}

double modified_tm_kernel(double eps, double eps_core, double eps_core_static, double q,
                          double xi_c, double kappa) {
  const double k = std::sqrt(q * q + (eps - 1.0) * xi_c * xi_c);
  if (eps == eps_core) return (eps * q - k) / (eps * q + k);
  const double k_perp_sq = std::max(q * q - xi_c * xi_c, 0.0);
  const double carrier = eps - eps_core;
  const double eta = std::sqrt(k_perp_sq + kappa * kappa * (eps_core_static / eps_core) * (eps / carrier));
  const double screening = k_perp_sq / eta * carrier / eps_core;
  return (eps * q - k - screening) / (eps * q + k + screening);
}

namespace {

double static_te(double mu) { return (mu - 1.0) / (mu + 1.0); }

// (mu k - K) / (mu k + K), K = sqrt(k^2 + plasma), without cancellation.
double plasma_te(double mu, double k, double plasma) {
  const double big_k = std::sqrt(k * k + plasma);
  return ((mu * mu - 1.0) * k * k - plasma) / ((mu * k + big_k) * (mu * k + big_k));
}

double static_tm(const StaticLimit& s) {
  return s.kind == StaticLimit::Kind::Finite ? materials::static_contrast(s.eps0) : 1.0;
}

}  // namespace

Reflection fresnel(const PlateMaterial& material, const ImaginaryFreqPoint& pt, int l,
                   double temperature) {
  if (l == 0) return zero_freq_limits(material, pt.k_perp, temperature);
  const double eps = materials::eval_eps(material.permittivity, pt.xi, temperature);
  const double mu = materials::eval_mu(material.magnetic, l, temperature);
  return fresnel_kernel(eps, mu, pt.q(), pt.xi / units::hbar_c);
}

double modified_tm(const PlateMaterial& material, const ImaginaryFreqPoint& pt,
                   double temperature) {
  if (!material.screening_kappa) {
    throw std::invalid_argument("modified TM coefficient requires a screening wave number (kappa)");
  }
  if (!(pt.xi > 0.0)) throw std::domain_error("modified TM coefficient requires xi > 0");
  const auto& model = material.permittivity;
  return modified_tm_kernel(materials::eval_eps(model, pt.xi, temperature),
                            materials::eval_eps_background(model, pt.xi),
                            materials::background_static_value(model), pt.q(),
                            pt.xi / units::hbar_c, *material.screening_kappa);
}

Reflection zero_freq_limits(const PlateMaterial& material, double k_perp, double temperature) {
  const double mu = materials::eval_mu(material.magnetic, 0, temperature);
  const auto limit = materials::static_limit(material.permittivity, temperature);
  Reflection r;
  r.tm = static_tm(limit);
  if (limit.kind == StaticLimit::Kind::Plasma) {
    const double wp_c = 1.0 / units::hbar_c;
    r.te = plasma_te(mu, k_perp, mu * limit.plasma_sq * wp_c * wp_c);
  } else {
    r.te = static_te(mu);
  }
  return r;
}

PlateResponse::PlateResponse(const PlateMaterial& material, int l, double temperature,
                             double a_nm, bool use_modified_tm) {
  const double scale = 2.0 * a_nm / units::hbar_c;
  const auto& model = material.permittivity;
  const bool screened = use_modified_tm && material.screening_kappa.has_value();
  if (screened) {
    kappa_ = 2.0 * a_nm * *material.screening_kappa;
    eps_core_static_ = materials::background_static_value(model);
  }
  if (l == 0) {
    const double mu = materials::eval_mu(material.magnetic, 0, temperature);
    const auto limit = materials::static_limit(model, temperature);
    constant_.tm = static_tm(limit);
    if (limit.kind == StaticLimit::Kind::Plasma) {
      te_ = Mode::StaticPlasma;
      mu_ = mu;
      plasma_ = mu * limit.plasma_sq * scale * scale;
    } else {
      constant_.te = static_te(mu);
    }
    if (screened && limit.kind == StaticLimit::Kind::Conducting) {
      tm_ = Mode::Modified;
      probe_ = true;
      xi_c_ = scale * modified_tm_static_probe;
      eps_ = materials::eval_eps(model, modified_tm_static_probe, temperature);
      eps_core_ = materials::eval_eps_background(model, modified_tm_static_probe);
    }
    return;
  }
  const double xi = l * units::matsubara_spacing(temperature);
  zeta_ = scale * xi;
  xi_c_ = zeta_;
  eps_ = materials::eval_eps(model, xi, temperature);
  mu_ = materials::eval_mu(material.magnetic, l, temperature);
  te_ = Mode::Fresnel;
  tm_ = Mode::Fresnel;
  if (screened) {
    tm_ = Mode::Modified;
    eps_core_ = materials::eval_eps_background(model, xi);
  }
}

Reflection PlateResponse::at(double y) const {
  Reflection r = constant_;
  if (tm_ == Mode::Fresnel || te_ == Mode::Fresnel) {
    const auto f = fresnel_kernel(eps_, mu_, y, xi_c_);
    if (tm_ == Mode::Fresnel) r.tm = f.tm;
    if (te_ == Mode::Fresnel) r.te = f.te;
  }
  if (tm_ == Mode::Modified) {
    const double q = probe_ ? std::hypot(y, xi_c_) : y;
    r.tm = modified_tm_kernel(eps_, eps_core_, eps_core_static_, q, xi_c_, kappa_);
  }
  if (te_ == Mode::StaticPlasma) r.te = plasma_te(mu_, y, plasma_);
  return r;
}

}  // namespace casimir::reflection
