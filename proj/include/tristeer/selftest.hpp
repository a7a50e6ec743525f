#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tristeer/analytic.hpp"
#include "tristeer/lyapunov.hpp"
#include "tristeer/measures.hpp"

namespace tristeer::selftest {

struct CheckResult {
  std::string name;
  bool pass{};
  std::string detail;
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& check : checks)
      if (!check.pass) return false;
    return true;
  }
};

/// Standard verification ranges: rates in [0.1, 20], couplings in [0, 20],
/// nbar_c in [0, 50].
inline SystemParams<double> random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.1, 20.0);
  std::uniform_real_distribution<double> coupling(0.0, 20.0);
  std::uniform_real_distribution<double> occupation(0.0, 50.0);
  SystemParams<double> p;
  p.kappa_a = rate(rng);
  p.kappa_b = rate(rng);
  p.gamma_c = rate(rng);
  p.g_a = coupling(rng);
  p.g_b = coupling(rng);
  p.lambda = coupling(rng);
  p.nbar_c = occupation(rng);
  return p;
}

/// Draws until the system is stable with margin above lyapunov_margin_floor.
template <typename PhasePicker>
SystemParams<double> random_stable_params(std::mt19937_64& rng, PhasePicker&& pick_phase) {
  while (true) {
    SystemParams<double> p = random_params(rng);
    p.phi = pick_phase(rng);
    if (max_real_eigenvalue(build_drift_matrix(p)) < -lyapunov_margin_floor) return p;
  }
}

inline double relative_gap(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// Numeric pipeline against the closed-form moments on the interference
/// phases; also checks the closed-form denominator sign against the
/// eigenvalue verdict (stable implies De > 0, De < 0 implies unstable) and
/// the physicality of every covariance matrix along the way.
inline CheckResult check_analytic_oracle(int draws, std::mt19937_64& rng) {
  constexpr double tol = 1e-8;
  constexpr double pi = std::numbers::pi;
  double worst = 0.0;
  int bad_physical = 0, bad_de = 0;
  std::uniform_int_distribution<int> half(0, 1);
  for (int i = 0; i < draws; ++i) {
    const auto p = random_stable_params(
        rng, [&](std::mt19937_64& r) { return half(r) ? pi / 2 : 3 * pi / 2; });
    const Mat6d v = solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p));
    if (!verify_physicality(v).physical) ++bad_physical;
    const auto numeric = moments_from_cm(reduce_pair(v, ModePair::ab));
    const auto closed = analytic_moments(p);
    worst = std::max({worst, relative_gap(numeric.n_first, closed.n_a),
                      relative_gap(numeric.n_second, closed.n_b),
                      std::abs(numeric.corr - closed.corr) /
                          std::max(1.0, std::abs(closed.corr))});
    if (!(closed.de > 0)) ++bad_de;
  }
  // De < 0 must only happen on unstable parameter sets
  int bad_de_sign = 0;
  for (int i = 0; i < draws; ++i) {
    SystemParams<double> p = random_params(rng);
    p.phi = half(rng) ? pi / 2 : 3 * pi / 2;
    const double max_re = max_real_eigenvalue(build_drift_matrix(p));
    if (std::abs(max_re) < 1e-9) continue;
    if (de_denominator(p) < 0 && max_re < 0) ++bad_de_sign;
  }
  CheckResult result;
  result.name = "analytic-oracle";
  result.pass = worst <= tol && bad_physical == 0 && bad_de == 0 && bad_de_sign == 0;
  std::ostringstream detail;
  detail << draws << " stable draws, worst relative gap " << worst
         << (bad_physical ? ", unphysical covariance matrices!" : "")
         << (bad_de + bad_de_sign ? ", De sign violations!" : "");
  result.detail = detail.str();
  return result;
}

/// The two in-library Lyapunov routes (dense vectorized, Schur) must agree.
inline CheckResult check_solver_agreement(int draws, std::mt19937_64& rng) {
  constexpr double tol = 1e-8;
  double worst = 0.0;
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < draws; ++i) {
    const auto p =
        random_stable_params(rng, [&](std::mt19937_64& r) { return phase(r); });
    const Mat6d m = build_drift_matrix(p);
    const Mat6d d = build_diffusion_matrix(p);
    const Mat6d a = solve_steady_state(m, d);
    const Mat6d b = solve_steady_state_schur(m, d);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        worst = std::max(worst, relative_gap(a(r, c), b(r, c)));
  }
  CheckResult result;
  result.name = "lyapunov-routes";
  result.pass = worst <= tol;
  std::ostringstream detail;
  detail << draws << " stable draws, worst entrywise gap " << worst;
  result.detail = detail.str();
  return result;
}

/// Measure-based and moment-based verdicts must agree outside a small band
/// around the criterion boundaries, for the pairs whose cross correlations
/// have the two-mode-squeezed form (ab and ac).
inline CheckResult check_criterion_equivalence(int draws, std::mt19937_64& rng) {
  constexpr double band = 1e-6;
  int mismatches = 0, excluded = 0;
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < draws; ++i) {
    const auto p =
        random_stable_params(rng, [&](std::mt19937_64& r) { return phase(r); });
    const Mat6d v = solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p));
    for (const ModePair pair : {ModePair::ab, ModePair::ac}) {
      const auto r = reduce_pair(v, pair);
      const double eta_margin = 1.0 - 2.0 * smallest_pt_symplectic(r);
      const double fwd_margin = renyi2_steering_margin(r, SteerDirection::forward);
      const double bwd_margin = renyi2_steering_margin(r, SteerDirection::backward);
      const auto moment_margins = hz_margins(moments_from_cm(r));
      const double closest =
          std::min({std::abs(eta_margin), std::abs(fwd_margin), std::abs(bwd_margin),
                    std::abs(moment_margins.entangled),
                    std::abs(moment_margins.steer_forward),
                    std::abs(moment_margins.steer_backward)});
      if (closest < band) {
        ++excluded;
        continue;
      }
      if ((eta_margin > 0) != (moment_margins.entangled > 0) ||
          (fwd_margin > 0) != (moment_margins.steer_forward > 0) ||
          (bwd_margin > 0) != (moment_margins.steer_backward > 0))
        ++mismatches;
    }
  }
  CheckResult result;
  result.name = "criterion-equivalence";
  result.pass = mismatches == 0;
  std::ostringstream detail;
  detail << draws << " stable draws x 2 pairs, " << mismatches << " mismatches, "
         << excluded << " near-boundary exclusions";
  result.detail = detail.str();
  return result;
}

inline Report run(int draws = 1000, uint64_t seed = 0x7215eedULL) {
  std::mt19937_64 rng(seed);
  Report report;
  report.checks.push_back(check_analytic_oracle(draws, rng));
  report.checks.push_back(check_solver_agreement(std::max(1, draws / 4), rng));
  report.checks.push_back(check_criterion_equivalence(draws, rng));
  return report;
}

} // namespace tristeer::selftest
