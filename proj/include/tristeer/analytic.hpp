#pragma once

#include <complex>
#include <sstream>
#include <utility>

#include "tristeer/measures.hpp"

namespace tristeer {

/// Closed-form steady-state moments on the phase family phi = pi/2 + n*pi,
/// where the cross quadrature correlations vanish and the pair correlation
/// is real. Serves as the independent oracle for the numeric pipeline.
template <typename Scalar = double>
struct AnalyticMoments {
  Scalar n_a{};
  Scalar n_b{};
  std::complex<Scalar> corr{};
  Scalar de{};
};

/// The two factors of the closed-form denominator De. Each is the negative
/// of one cubic Hurwitz quantity, so the phase-locked system is stable
/// exactly when both factors are strictly negative (hence De > 0). Note the
/// converse fails: both factors positive also yields De > 0, on unstable
/// parameter sets with large g_a.
template <typename Scalar>
std::pair<Scalar, Scalar> de_factors(const SystemParams<Scalar>& p) {
  const Scalar ka = p.kappa_a, kb = p.kappa_b, gc = p.gamma_c;
  const Scalar ga2 = p.g_a * p.g_a, gb2 = p.g_b * p.g_b, l2 = p.lambda * p.lambda;
  const Scalar f1 = kb * ga2 - ka * gb2 - gc * ka * kb + gc * l2;
  const Scalar f2 = (ka + gc) * ga2 - (kb + gc) * gb2
                    + (l2 - (ka + gc) * (kb + gc)) * (ka + kb);
  return {f1, f2};
}

template <typename Scalar>
Scalar de_denominator(const SystemParams<Scalar>& p) {
  const auto [f1, f2] = de_factors(p);
  return f1 * f2;
}

/// Evaluates the closed-form populations and correlation. Requires
/// phi = pi/2 + n*pi within 1e-9, zero occupation on modes a and b (the
/// closed forms assume it; nbar_c is the thermal occupation that appears),
/// and a stable system (both De factors negative).
template <typename Scalar>
AnalyticMoments<Scalar> analytic_moments(const SystemParams<Scalar>& p) {
  validate(p);
  if (!is_interference_phase(p.phi))
    throw contract_error("analytic_moments: closed forms exist only at phi = pi/2 + n*pi");
  if (p.nbar_a != Scalar(0) || p.nbar_b != Scalar(0))
    throw contract_error("analytic_moments: closed forms assume nbar_a = nbar_b = 0");
  const auto [f1, f2] = de_factors(p);
  if (!(f1 < Scalar(0) && f2 < Scalar(0))) {
    std::ostringstream msg;
    msg << "analytic_moments: system is not stable at this phase (De factors "
        << f1 << ", " << f2 << ")";
    throw stability_error(msg.str());
  }

  const Scalar s = interference_sign(p.phi);
  const Scalar ka = p.kappa_a, kb = p.kappa_b, gc = p.gamma_c;
  const Scalar ga = p.g_a, gb = p.g_b, l = p.lambda, nth = p.nbar_c;
  const Scalar ga2 = ga * ga, gb2 = gb * gb, l2 = l * l;
  const Scalar ksum = ka + kb + gc;
  const Scalar de = f1 * f2;

  AnalyticMoments<Scalar> out;
  out.de = de;
  out.n_a = (ga2 * gb2 * ksum * kb
             + ga2 * gc * (nth + 1) * (ka * gb2 - kb * ga2 + kb * (kb + gc) * (ka + kb))
             + l2 * (kb * (ka * gb2 - kb * ga2 + gc * (ka + gc) * (kb + gc))
                     + gc * (nth + 1) * (ksum * gb2 - gc * ga2))
             - l2 * l2 * kb * gc
             - 2 * l * nth * kb * gc * ga * gb * ksum * s) / de;
  out.n_b = (ga2 * gb2 * ksum * ka
             + gb2 * gc * nth * (ka * gb2 - kb * ga2 + ka * (ka + gc) * (ka + kb))
             + l2 * (ka * (ka * gb2 - kb * ga2 + gc * (ka + gc) * (kb + gc))
                     + gc * nth * (ksum * ga2 - gc * gb2))
             - l2 * l2 * ka * gc
             - 2 * l * (nth + 1) * ka * gc * ga * gb * ksum * s) / de;
  out.corr = std::complex<Scalar>(
      -(ga * gb * ka * (kb * ga2 + (kb + gc) * (gb2 + kb * gc))
        + ga * gb * gc * nth * (ka * gb2 - kb * ga2 + ka * kb * (ka + kb + 2 * gc))
        + l * s * (kb * kb * ka * ga2 - ka * (gb2 + kb * gc) * (ka + gc) * (kb + gc)
                   - gc * nth * ksum * (ka * gb2 + kb * ga2))
        + l2 * l * s * ka * kb * gc
        + l2 * ga * gb * gc * (ka * (nth + 1) + kb * nth)) / de,
      Scalar(0));
  return out;
}

/// Steady-state moments of the direct-path-only family (g_a = g_b = 0) at
/// arbitrary phase. The correlation carries the phase factor
/// (sin phi - i cos phi); its modulus is phase independent.
template <typename Scalar>
PairMoments<Scalar> tmss_only_moments(const SystemParams<Scalar>& p) {
  validate(p);
  if (p.g_a != Scalar(0) || p.g_b != Scalar(0))
    throw contract_error("tmss_only_moments: requires g_a = g_b = 0");
  const Scalar ka = p.kappa_a, kb = p.kappa_b, l = p.lambda;
  if (!(l * l < ka * kb))
    throw stability_error("tmss_only_moments: requires lambda^2 < kappa_a * kappa_b");
  const Scalar den = (ka + kb) * (ka * kb - l * l);
  PairMoments<Scalar> m;
  m.n_first = kb * l * l / den;
  m.n_second = ka * l * l / den;
  m.corr = std::complex<Scalar>(std::sin(p.phi), -std::cos(p.phi)) * (ka * kb * l / den);
  return m;
}

/// Sign conditions for directional steering in the direct-path-only family:
/// forward iff (kappa_b - kappa_a)(kappa_a kappa_b - lambda^2) > 0, backward
/// with a and b swapped. Only the mode with the lower damping rate can steer.
struct SteeringConditions {
  bool forward{};
  bool backward{};
};

template <typename Scalar>
SteeringConditions tmss_only_steering_conditions(const SystemParams<Scalar>& p) {
  validate(p);
  if (p.g_a != Scalar(0) || p.g_b != Scalar(0))
    throw contract_error("tmss_only_steering_conditions: requires g_a = g_b = 0");
  const Scalar ka = p.kappa_a, kb = p.kappa_b, l = p.lambda;
  if (!(l * l < ka * kb))
    throw stability_error("tmss_only_steering_conditions: requires lambda^2 < kappa_a * kappa_b");
  const Scalar margin = ka * kb - l * l;
  return {.forward = (kb - ka) * margin > Scalar(0),
          .backward = (ka - kb) * margin > Scalar(0)};
}

} // namespace tristeer
