#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "tristeer/model.hpp"

namespace tristeer {

/// Measures this close to zero (from rounding) are reported as exactly zero,
/// so regime classification stays deterministic.
inline constexpr double measure_clamp = 1e-9;

/// Strict-positivity guard used when mapping steering values to regimes.
inline constexpr double regime_zero = 1e-12;

/// Reduced two-mode state: 2x2 diagonal blocks of each mode plus the cross
/// block, extracted from the 6x6 covariance matrix.
template <typename Scalar = double>
struct ReducedCM {
  Mat2<Scalar> va;
  Mat2<Scalar> vb;
  Mat2<Scalar> vab;
  ModePair pair{ModePair::ab};

  Mat4<Scalar> full() const {
    Mat4<Scalar> v;
    v.template topLeftCorner<2, 2>() = va;
    v.template topRightCorner<2, 2>() = vab;
    v.template bottomLeftCorner<2, 2>() = vab.transpose();
    v.template bottomRightCorner<2, 2>() = vb;
    return v;
  }
};

/// Principal 4x4 submatrix of the named pair, (X,Y) ordering preserved.
template <typename Scalar>
ReducedCM<Scalar> reduce_pair(const Mat6<Scalar>& v, ModePair pair) {
  const Scalar scale = std::max(Scalar(1), v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale)
    throw contract_error("reduce_pair: covariance matrix is not symmetric");
  const auto idx = pair_indices(pair);
  ReducedCM<Scalar> r;
  r.pair = pair;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r.va(i, j) = v(idx[i], idx[j]);
      r.vb(i, j) = v(idx[i + 2], idx[j + 2]);
      r.vab(i, j) = v(idx[i], idx[j + 2]);
    }
  return r;
}

/// Smallest symplectic eigenvalue of the partially transposed pair state,
///   eta- = sqrt((Sigma - sqrt(Sigma^2 - 4 det V)) / 2),
///   Sigma = det Va + det Vb - 2 det Vab.
/// The state is entangled iff eta- < 1/2.
template <typename Scalar>
Scalar smallest_pt_symplectic(const ReducedCM<Scalar>& r) {
  const Scalar det_a = r.va.determinant();
  const Scalar det_b = r.vb.determinant();
  const Scalar det_c = r.vab.determinant();
  const Scalar det_v = r.full().determinant();
  const Scalar sigma = det_a + det_b - Scalar(2) * det_c;
  Scalar disc = sigma * sigma - Scalar(4) * det_v;
  const Scalar scale = std::max(Scalar(1), sigma * sigma);
  if (disc < -Scalar(measure_clamp) * scale)
    throw numerical_error("log_negativity: negative discriminant, state is not physical");
  disc = std::max(disc, Scalar(0));
  Scalar inner = sigma - std::sqrt(disc);
  if (inner < -Scalar(measure_clamp) * scale)
    throw numerical_error("log_negativity: negative radicand, state is not physical");
  inner = std::max(inner, Scalar(0));
  return std::sqrt(inner / Scalar(2));
}

/// Logarithmic negativity E_N = max{0, -ln(2 eta-)} of the pair.
template <typename Scalar>
Scalar log_negativity(const ReducedCM<Scalar>& r) {
  const Scalar eta = smallest_pt_symplectic(r);
  if (!(eta > Scalar(0)))
    throw numerical_error("log_negativity: vanishing symplectic eigenvalue");
  const Scalar value = -std::log(Scalar(2) * eta);
  return value > Scalar(0) ? value : Scalar(0);
}

/// Unclamped Renyi-2 steering margin S(2 V_steering) - S(2 V), with
/// S(sigma) = ln(det sigma)/2. Positive exactly when the party can steer.
template <typename Scalar>
Scalar renyi2_steering_margin(const ReducedCM<Scalar>& r, SteerDirection direction) {
  const Scalar det_full = Scalar(16) * r.full().determinant(); // det(2V), 4x4
  const Mat2<Scalar>& party = direction == SteerDirection::forward ? r.va : r.vb;
  const Scalar det_party = Scalar(4) * party.determinant(); // det(2V_x), 2x2
  if (!(det_full > Scalar(0)) || !(det_party > Scalar(0)))
    throw numerical_error("gaussian_steering: non-positive determinant");
  return (std::log(det_party) - std::log(det_full)) / Scalar(2);
}

/// Renyi-2 Gaussian steering G = max{0, S(2 V_steering) - S(2 V)}.
/// The factor 2 belongs to the vacuum-variance-1/2 convention used
/// throughout; conventions with vacuum variance 1 drop it.
template <typename Scalar>
Scalar gaussian_steering(const ReducedCM<Scalar>& r, SteerDirection direction) {
  const Scalar value = renyi2_steering_margin(r, direction);
  return value > Scalar(0) ? value : Scalar(0);
}

/// Populations and the two-mode correlation of a reduced zero-mean state:
///   <n>  = [V(X) + V(Y) - 1] / 2 per mode,
///   corr = [V(Xa,Xb) - V(Ya,Yb)]/2 + i [V(Xa,Yb) + V(Ya,Xb)]/2.
template <typename Scalar = double>
struct PairMoments {
  Scalar n_first{};
  Scalar n_second{};
  std::complex<Scalar> corr{};
};

template <typename Scalar>
PairMoments<Scalar> moments_from_cm(const ReducedCM<Scalar>& r) {
  PairMoments<Scalar> m;
  m.n_first = (r.va(0, 0) + r.va(1, 1) - Scalar(1)) / Scalar(2);
  m.n_second = (r.vb(0, 0) + r.vb(1, 1) - Scalar(1)) / Scalar(2);
  m.corr = {(r.vab(0, 0) - r.vab(1, 1)) / Scalar(2),
            (r.vab(0, 1) + r.vab(1, 0)) / Scalar(2)};
  for (Scalar* n : {&m.n_first, &m.n_second}) {
    if (*n < -Scalar(measure_clamp))
      throw numerical_error("moments_from_cm: negative population, state is not physical");
    if (*n < Scalar(0)) *n = Scalar(0);
  }
  // Cauchy-Schwarz: |<ab>|^2 <= <a+a>(<b+b>+1) and with the roles swapped
  const Scalar c2 = std::norm(m.corr);
  const Scalar b1 = m.n_first * (m.n_second + Scalar(1));
  const Scalar b2 = m.n_second * (m.n_first + Scalar(1));
  if (c2 - b1 > Scalar(measure_clamp) * std::max(Scalar(1), b1) ||
      c2 - b2 > Scalar(measure_clamp) * std::max(Scalar(1), b2))
    throw numerical_error("moments_from_cm: correlation violates Cauchy-Schwarz bound");
  return m;
}

/// Moment-based witnesses: entanglement and directional steering hold when
/// |corr| strictly exceeds the respective population bound.
struct HzFlags {
  bool entangled{};
  bool steer_forward{};
  bool steer_backward{};
};

/// Strictness tolerance of the witness inequalities.
inline constexpr double hz_strict_tol = 1e-9;

/// Signed margins |corr| - bound of the three witness inequalities.
template <typename Scalar>
struct HzMargins {
  Scalar entangled{};
  Scalar steer_forward{};
  Scalar steer_backward{};
};

template <typename Scalar>
HzMargins<Scalar> hz_margins(const PairMoments<Scalar>& m) {
  const Scalar c = std::abs(m.corr);
  const Scalar half = Scalar(1) / Scalar(2);
  return {c - std::sqrt(m.n_first * m.n_second),
          c - std::sqrt(m.n_second * (m.n_first + half)),
          c - std::sqrt(m.n_first * (m.n_second + half))};
}

template <typename Scalar>
HzFlags hz_criteria(const PairMoments<Scalar>& m) {
  const HzMargins<Scalar> margins = hz_margins(m);
  return {margins.entangled > Scalar(hz_strict_tol),
          margins.steer_forward > Scalar(hz_strict_tol),
          margins.steer_backward > Scalar(hz_strict_tol)};
}

template <typename Scalar>
SteeringRegime classify_regime(Scalar g_fwd, Scalar g_bwd) {
  if (g_fwd < Scalar(0) || g_bwd < Scalar(0))
    throw contract_error("classify_regime: steering values must be non-negative");
  const bool fwd = g_fwd > Scalar(regime_zero);
  const bool bwd = g_bwd > Scalar(regime_zero);
  if (fwd && bwd) return SteeringRegime::two_way;
  if (fwd) return SteeringRegime::one_way_forward;
  if (bwd) return SteeringRegime::one_way_backward;
  return SteeringRegime::no_way;
}

/// Everything the sweep reports about one pair of one steady state.
template <typename Scalar = double>
struct CorrelationReport {
  ModePair pair{ModePair::ab};
  Scalar e_n{};
  Scalar g_fwd{};
  Scalar g_bwd{};
  SteeringRegime regime{SteeringRegime::no_way};
  HzFlags hz{};
  PairMoments<Scalar> moments{};
};

template <typename Scalar>
CorrelationReport<Scalar> analyze_pair(const Mat6<Scalar>& v, ModePair pair) {
  const ReducedCM<Scalar> r = reduce_pair(v, pair);
  CorrelationReport<Scalar> report;
  report.pair = pair;
  report.e_n = log_negativity(r);
  report.g_fwd = gaussian_steering(r, SteerDirection::forward);
  report.g_bwd = gaussian_steering(r, SteerDirection::backward);
  report.regime = classify_regime(report.g_fwd, report.g_bwd);
  report.moments = moments_from_cm(r);
  report.hz = hz_criteria(report.moments);
  return report;
}

} // namespace tristeer
