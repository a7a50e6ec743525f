#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "tristeer/errors.hpp"
#include "tristeer/types.hpp"

namespace tristeer {

/// One instance of the three-mode loop: two modes a, b coupled directly by a
/// two-mode-squeezing interaction of strength `lambda` and relative phase
/// `phi`, and indirectly through a damped intermediate mode c (parametric
/// coupling g_a on the a side, beam-splitter coupling g_b on the b side).
///
/// All rates share one unit; the usual convention is units of kappa_a.
/// Occupations are mean thermal quanta of the baths seen by each mode.
template <typename Scalar = double>
struct SystemParams {
  Scalar kappa_a{1};
  Scalar kappa_b{1};
  Scalar gamma_c{1};
  Scalar lambda{0};
  Scalar phi{0};
  Scalar g_a{0};
  Scalar g_b{0};
  Scalar nbar_a{0};
  Scalar nbar_b{0};
  Scalar nbar_c{0};
};

using SystemParamsd = SystemParams<double>;

/// Throws param_error unless all rates are strictly positive and all
/// couplings/occupations are finite and non-negative. phi may be any finite
/// real; it enters only through sin/cos and everything downstream is
/// 2pi-periodic in it.
template <typename Scalar>
void validate(const SystemParams<Scalar>& p) {
  const auto positive = [](Scalar x) { return std::isfinite(x) && x > Scalar(0); };
  const auto non_negative = [](Scalar x) { return std::isfinite(x) && x >= Scalar(0); };
  std::ostringstream bad;
  if (!positive(p.kappa_a)) bad << " kappa_a";
  if (!positive(p.kappa_b)) bad << " kappa_b";
  if (!positive(p.gamma_c)) bad << " gamma_c";
  if (!non_negative(p.lambda)) bad << " lambda";
  if (!non_negative(p.g_a)) bad << " g_a";
  if (!non_negative(p.g_b)) bad << " g_b";
  if (!non_negative(p.nbar_a)) bad << " nbar_a";
  if (!non_negative(p.nbar_b)) bad << " nbar_b";
  if (!non_negative(p.nbar_c)) bad << " nbar_c";
  if (!std::isfinite(p.phi)) bad << " phi";
  if (!bad.str().empty())
    throw param_error("invalid system parameters:" + bad.str());
}

/// Phase reduced to [0, 2pi) for canonical comparison.
template <typename Scalar>
Scalar canonical_phase(Scalar phi) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::fmod(phi, two_pi);
  if (r < Scalar(0)) r += two_pi;
  return r;
}

/// True when phi sits on the half-integer-pi family pi/2 + n*pi (within tol),
/// where the quadrature dynamics decouples into two 3x3 blocks.
template <typename Scalar>
bool is_interference_phase(Scalar phi, Scalar tol = Scalar(1e-9)) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  return std::abs(std::remainder(phi - pi / Scalar(2), pi)) <= tol;
}

/// sin(phi) snapped to +1 or -1 for phases on the pi/2 + n*pi family.
template <typename Scalar>
Scalar interference_sign(Scalar phi) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (!is_interference_phase(phi))
    throw contract_error("interference_sign: phi is not of the form pi/2 + n*pi");
  const auto n = std::llround((phi - pi / Scalar(2)) / pi);
  return (n % 2 == 0) ? Scalar(1) : Scalar(-1);
}

/// Drift matrix of the quadrature Langevin dynamics du = M u dt + noise, in
/// the ordering (X_a,Y_a,X_b,Y_b,X_c,Y_c).
template <typename Scalar>
Mat6<Scalar> build_drift_matrix(const SystemParams<Scalar>& p) {
  validate(p);
  const Scalar s = std::sin(p.phi);
  const Scalar c = std::cos(p.phi);
  const Scalar l = p.lambda;
  Mat6<Scalar> m;
  m << -p.kappa_a, 0,          l * s,      -l * c,     0,          -p.g_a,
       0,          -p.kappa_a, -l * c,     -l * s,     -p.g_a,     0,
       l * s,      -l * c,     -p.kappa_b, 0,          0,          p.g_b,
       -l * c,     -l * s,     0,          -p.kappa_b, -p.g_b,     0,
       0,          -p.g_a,     0,          p.g_b,      -p.gamma_c, 0,
       -p.g_a,     0,          -p.g_b,     0,          0,          -p.gamma_c;
  return m;
}

/// Diagonal diffusion matrix of the stationary input noise,
/// diag((2n+1)*rate) per quadrature pair.
template <typename Scalar>
Mat6<Scalar> build_diffusion_matrix(const SystemParams<Scalar>& p) {
  validate(p);
  const Scalar da = (Scalar(2) * p.nbar_a + Scalar(1)) * p.kappa_a;
  const Scalar db = (Scalar(2) * p.nbar_b + Scalar(1)) * p.kappa_b;
  const Scalar dc = (Scalar(2) * p.nbar_c + Scalar(1)) * p.gamma_c;
  Mat6<Scalar> d = Mat6<Scalar>::Zero();
  d.diagonal() << da, da, db, db, dc, dc;
  return d;
}

/// Largest real part among the eigenvalues of a 6x6 drift matrix.
template <typename Scalar>
Scalar max_real_eigenvalue(const Mat6<Scalar>& m) {
  Eigen::EigenSolver<Mat6<Scalar>> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigenvalue computation did not converge for drift matrix:\n" << m;
    throw numerical_error(msg.str());
  }
  return solver.eigenvalues().real().maxCoeff();
}

/// max_real_part below -stability_margin counts as stable; the band
/// [-stability_margin, stability_margin] is flagged marginal and treated as
/// unstable, since the Lyapunov solution blows up at the boundary.
inline constexpr double stability_margin = 1e-12;

template <typename Scalar = double>
struct StabilityReport {
  bool stable{};
  Scalar max_real_part{};
  bool marginal{};
  bool routh_hurwitz_applicable{};
  std::optional<bool> routh_hurwitz_stable{};

  /// Diagnostic only; the eigenvalue verdict stays authoritative.
  bool routh_hurwitz_disagrees() const {
    return routh_hurwitz_stable.has_value() && *routh_hurwitz_stable != stable;
  }
};

/// The two closed-form Hurwitz quantities of the decoupled cubic blocks at
/// phi = pi/2 + n*pi. Both strictly positive iff the system is stable there.
template <typename Scalar>
std::pair<Scalar, Scalar> routh_hurwitz_quantities(const SystemParams<Scalar>& p) {
  const Scalar ka = p.kappa_a, kb = p.kappa_b, gc = p.gamma_c;
  const Scalar ga2 = p.g_a * p.g_a, gb2 = p.g_b * p.g_b, l2 = p.lambda * p.lambda;
  const Scalar q1 = ka * kb * gc - ga2 * kb + gb2 * ka - l2 * gc;
  const Scalar q2 = (ka + kb) * (ka + gc) * (kb + gc)
                    - ga2 * (ka + gc) + gb2 * (kb + gc) - l2 * (ka + kb);
  return {q1, q2};
}

/// Stability verdict from the eigenvalues of the drift matrix. On the
/// pi/2 + n*pi phase family the closed-form Routh-Hurwitz conditions are
/// evaluated as well and reported alongside; they never override the
/// eigenvalue verdict.
template <typename Scalar>
StabilityReport<Scalar> check_stability(const SystemParams<Scalar>& p) {
  validate(p);
  StabilityReport<Scalar> report;
  report.max_real_part = max_real_eigenvalue(build_drift_matrix(p));
  report.marginal = std::abs(report.max_real_part) <= Scalar(stability_margin);
  report.stable = report.max_real_part < -Scalar(stability_margin);
  report.routh_hurwitz_applicable = is_interference_phase(p.phi);
  if (report.routh_hurwitz_applicable) {
    const auto [q1, q2] = routh_hurwitz_quantities(p);
    report.routh_hurwitz_stable = q1 > Scalar(0) && q2 > Scalar(0);
  }
  return report;
}

/// Bose occupation 1/(exp(hbar*omega/kB*T) - 1) of a mode at angular
/// frequency omega (rad/s) in a bath at temperature T (kelvin); 0 at T = 0.
inline double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0) || !std::isfinite(omega))
    throw param_error("thermal_occupation: frequency must be positive");
  if (temperature < 0 || !std::isfinite(temperature))
    throw param_error("thermal_occupation: temperature must be non-negative");
  if (temperature == 0) return 0;
  constexpr double hbar = 1.054571817e-34; // J s
  constexpr double k_boltzmann = 1.380649e-23; // J / K
  return 1.0 / std::expm1(hbar * omega / (k_boltzmann * temperature));
}

} // namespace tristeer
