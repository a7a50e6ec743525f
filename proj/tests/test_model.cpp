#include <doctest.h>

#include <numbers>
#include <random>

#include "tristeer/model.hpp"

using namespace tristeer;

namespace {

constexpr double pi = std::numbers::pi;

SystemParams<double> fig2a_params(double phi) {
  SystemParams<double> p;
  p.kappa_a = p.kappa_b = 1.0;
  p.gamma_c = 2.0;
  p.lambda = 0.4;
  p.g_a = 3.2;
  p.g_b = 5.0;
  p.phi = phi;
  return p;
}

} // namespace

TEST_CASE("drift matrix entries at the reference parameters") {
  const Mat6d m = build_drift_matrix(fig2a_params(pi / 2));
  CHECK(m(0, 0) == doctest::Approx(-1.0));
  CHECK(m(1, 1) == doctest::Approx(-1.0));
  CHECK(m(2, 2) == doctest::Approx(-1.0));
  CHECK(m(4, 4) == doctest::Approx(-2.0));
  CHECK(m(0, 2) == doctest::Approx(0.4));     // lambda sin(phi)
  CHECK(std::abs(m(0, 3)) < 1e-15);           // lambda cos(phi)
  CHECK(m(2, 0) == doctest::Approx(0.4));
  CHECK(m(0, 5) == doctest::Approx(-3.2));
  CHECK(m(4, 1) == doctest::Approx(-3.2));
  CHECK(m(4, 3) == doctest::Approx(5.0));
  CHECK(m(2, 5) == doctest::Approx(5.0));
  CHECK(m(5, 2) == doctest::Approx(-5.0));
}

TEST_CASE("decoupled drift matrix is pure damping") {
  SystemParams<double> p;
  p.kappa_a = p.kappa_b = 1.0;
  p.gamma_c = 2.0;
  const Mat6d m = build_drift_matrix(p);
  Mat6d expected = Mat6d::Zero();
  expected.diagonal() << -1, -1, -1, -1, -2, -2;
  CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase 3pi/2 flips exactly the four lambda*sin entries") {
  const Mat6d m1 = build_drift_matrix(fig2a_params(pi / 2));
  const Mat6d m2 = build_drift_matrix(fig2a_params(3 * pi / 2));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const bool sin_entry = (i == 0 && j == 2) || (i == 2 && j == 0) ||
                             (i == 1 && j == 3) || (i == 3 && j == 1);
      if (sin_entry)
        CHECK(std::abs(m2(i, j) + m1(i, j)) < 1e-15);
      else
        CHECK(std::abs(m2(i, j) - m1(i, j)) < 1e-15);
    }
}

TEST_CASE("drift matrix is 2pi-periodic in phi") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    SystemParams<double> p;
    p.kappa_a = 0.1 + 5 * u(rng);
    p.kappa_b = 0.1 + 5 * u(rng);
    p.gamma_c = 0.1 + 5 * u(rng);
    p.lambda = 3 * u(rng);
    p.g_a = 5 * u(rng);
    p.g_b = 5 * u(rng);
    p.phi = 2 * pi * u(rng);
    SystemParams<double> q = p;
    q.phi += 2 * pi;
    const Mat6d gap = build_drift_matrix(p) - build_drift_matrix(q);
    CHECK(gap.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("a<->b relabel is not a symmetry: four coupling entries flip sign") {
  SystemParams<double> p;
  p.kappa_a = 1.0; p.kappa_b = 2.0; p.gamma_c = 3.0;
  p.lambda = 0.7; p.phi = 0.9; p.g_a = 1.3; p.g_b = 2.1;
  SystemParams<double> swapped = p;
  std::swap(swapped.kappa_a, swapped.kappa_b);
  std::swap(swapped.g_a, swapped.g_b);

  // permute the original so its first mode block is old mode b
  const std::array<int, 6> order = {2, 3, 0, 1, 4, 5};
  const Mat6d m = build_drift_matrix(p);
  Mat6d permuted;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) permuted(i, j) = m(order[i], order[j]);

  const Mat6d relabeled = build_drift_matrix(swapped);
  CHECK((permuted - relabeled).cwiseAbs().maxCoeff() > 1.0); // not a symmetry
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      // the X-quadrature couplings to mode c carry the asymmetric signs
      const bool flipped = (i == 0 && j == 5) || (i == 2 && j == 5) ||
                           (i == 4 && j == 1) || (i == 4 && j == 3);
      if (flipped)
        CHECK(permuted(i, j) == doctest::Approx(-relabeled(i, j)));
      else
        CHECK(permuted(i, j) == doctest::Approx(relabeled(i, j)));
    }
}

TEST_CASE("diffusion matrix") {
  SystemParams<double> p;
  p.kappa_a = p.kappa_b = 1.0;
  p.gamma_c = 2.0;
  SUBCASE("vacuum baths") {
    const Mat6d d = build_diffusion_matrix(p);
    Mat6d expected = Mat6d::Zero();
    expected.diagonal() << 1, 1, 1, 1, 2, 2;
    CHECK((d - expected).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("thermal intermediate mode") {
    p.nbar_c = 3.0;
    const Mat6d d = build_diffusion_matrix(p);
    CHECK(d(4, 4) == 14.0);
    CHECK(d(5, 5) == 14.0);
    CHECK(d(0, 0) == 1.0);
  }
  SUBCASE("uniform occupation 1/2 doubles the identity") {
    p.gamma_c = 1.0;
    p.nbar_a = p.nbar_b = p.nbar_c = 0.5;
    const Mat6d d = build_diffusion_matrix(p);
    CHECK((d - 2.0 * Mat6d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("parameter validation") {
  SystemParams<double> p;
  SUBCASE("non-positive rate") {
    p.kappa_a = 0.0;
    CHECK_THROWS_AS(build_drift_matrix(p), param_error);
  }
  SUBCASE("negative occupation") {
    p.nbar_c = -0.1;
    CHECK_THROWS_AS(build_diffusion_matrix(p), param_error);
  }
  SUBCASE("negative coupling") {
    p.g_a = -1.0;
    CHECK_THROWS_AS(build_drift_matrix(p), param_error);
  }
  SUBCASE("non-finite phase") {
    p.phi = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(p), param_error);
  }
}

TEST_CASE("stability verdicts") {
  SUBCASE("reference loop parameters are stable at every phase") {
    for (const double phi : {0.0, 0.4, pi / 2, 1.9, pi, 3 * pi / 2, 5.8}) {
      const auto report = check_stability(fig2a_params(phi));
      CHECK(report.stable);
      CHECK(report.max_real_part < 0);
    }
  }
  SUBCASE("direct path alone destabilizes above lambda^2 = kappa_a kappa_b") {
    SystemParams<double> p;
    p.kappa_a = p.kappa_b = 1.0;
    p.gamma_c = 1.0;
    p.lambda = 1.2;
    p.phi = pi / 2;
    const auto report = check_stability(p);
    CHECK_FALSE(report.stable);
    CHECK(report.max_real_part > 0);
  }
  SUBCASE("pure damping") {
    SystemParams<double> p;
    p.kappa_a = 1.0; p.kappa_b = 1.5; p.gamma_c = 2.0;
    const auto report = check_stability(p);
    CHECK(report.stable);
    CHECK(report.max_real_part == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("the marginal band counts as unstable") {
    SystemParams<double> p;
    p.kappa_a = p.kappa_b = p.gamma_c = 1e-13; // slower than the margin
    const auto report = check_stability(p);
    CHECK(report.marginal);
    CHECK_FALSE(report.stable);
  }
}

TEST_CASE("canonical phase reduction") {
  CHECK(canonical_phase(0.0) == 0.0);
  CHECK(canonical_phase(2 * pi) == 0.0);
  CHECK(canonical_phase(-0.5) == doctest::Approx(2 * pi - 0.5).epsilon(1e-15));
  CHECK(canonical_phase(7.0) == doctest::Approx(7.0 - 2 * pi).epsilon(1e-15));
  CHECK(is_interference_phase(pi / 2));
  CHECK(is_interference_phase(3 * pi / 2));
  CHECK(is_interference_phase(-pi / 2));
  CHECK_FALSE(is_interference_phase(1.0));
  CHECK(interference_sign(pi / 2) == 1.0);
  CHECK(interference_sign(3 * pi / 2) == -1.0);
  CHECK(interference_sign(-pi / 2) == -1.0);
  CHECK(interference_sign(5 * pi / 2) == 1.0);
  CHECK_THROWS_AS(interference_sign(1.0), contract_error);
}

TEST_CASE("routh-hurwitz cross-check against the eigenvalue verdict") {
  SUBCASE("applicability follows the phase family") {
    auto p = fig2a_params(pi / 2);
    CHECK(check_stability(p).routh_hurwitz_applicable);
    p.phi = 3 * pi / 2;
    CHECK(check_stability(p).routh_hurwitz_applicable);
    p.phi = 1.0;
    const auto report = check_stability(p);
    CHECK_FALSE(report.routh_hurwitz_applicable);
    CHECK_FALSE(report.routh_hurwitz_stable.has_value());
  }
  SUBCASE("closed form agrees with eigenvalues away from the margin") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> rate(0.1, 20.0);
    std::uniform_real_distribution<double> coupling(0.0, 20.0);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      SystemParams<double> p;
      p.kappa_a = rate(rng); p.kappa_b = rate(rng); p.gamma_c = rate(rng);
      p.g_a = coupling(rng); p.g_b = coupling(rng); p.lambda = coupling(rng);
      p.phi = (i % 2) ? pi / 2 : 3 * pi / 2;
      const auto report = check_stability(p);
      if (std::abs(report.max_real_part) < 1e-9) continue;
      ++checked;
      REQUIRE(report.routh_hurwitz_stable.has_value());
      CHECK_FALSE(report.routh_hurwitz_disagrees());
    }
    CHECK(checked > 900);
  }
}

TEST_CASE("thermal occupation") {
  CHECK(thermal_occupation(1e9, 0.0) == 0.0);
  constexpr double k_over_hbar = 1.380649e-23 / 1.054571817e-34;
  // hbar*omega = kB*T*ln2 gives exactly one quantum
  CHECK(thermal_occupation(std::numbers::ln2 * k_over_hbar, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(thermal_occupation(0.01 * k_over_hbar, 1.0) ==
        doctest::Approx(99.50083333194443).epsilon(1e-10));
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), param_error);
  CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), param_error);
  CHECK_THROWS_AS(thermal_occupation(1e9, -1.0), param_error);
}

TEST_CASE("drift matrix builds for other scalar types") {
  SystemParams<long double> p;
  p.kappa_a = p.kappa_b = 1.0L;
  p.gamma_c = 2.0L;
  p.lambda = 0.4L;
  p.g_a = 3.2L;
  p.g_b = 5.0L;
  p.phi = std::numbers::pi_v<long double> / 2;
  const auto m = build_drift_matrix(p);
  CHECK(static_cast<double>(m(0, 2)) == doctest::Approx(0.4));
  const auto d = build_diffusion_matrix(p);
  CHECK(static_cast<double>(d(4, 4)) == doctest::Approx(2.0));
}
