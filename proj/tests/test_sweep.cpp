#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "tristeer/figures.hpp"
#include "tristeer/sweep.hpp"

using namespace tristeer;

namespace {

constexpr double pi = std::numbers::pi;

SweepSpec fig2a_spec(double lambda = 0.4) {
  SweepSpec spec;
  spec.base.kappa_a = spec.base.kappa_b = 1.0;
  spec.base.gamma_c = 2.0;
  spec.base.g_a = 3.2;
  spec.base.g_b = 5.0;
  spec.base.lambda = lambda;
  spec.axis1 = {ParamKey::phi, phase_grid()};
  spec.pairs = {ModePair::ab};
  return spec;
}

bool bitwise_equal(double a, double b) {
  return std::bit_cast<uint64_t>(a) == std::bit_cast<uint64_t>(b);
}

bool rows_bitwise_equal(const SweepRow& a, const SweepRow& b) {
  return bitwise_equal(a.axis1, b.axis1) && a.axis2.has_value() == b.axis2.has_value() &&
         (!a.axis2 || bitwise_equal(*a.axis2, *b.axis2)) && a.stable == b.stable &&
         a.pair == b.pair && bitwise_equal(a.e_n, b.e_n) &&
         bitwise_equal(a.g_fwd, b.g_fwd) && bitwise_equal(a.g_bwd, b.g_bwd) &&
         a.regime == b.regime && bitwise_equal(a.n_first, b.n_first) &&
         bitwise_equal(a.n_second, b.n_second) && bitwise_equal(a.abs_corr, b.abs_corr);
}

} // namespace

TEST_CASE("single-point grid reproduces the direct pipeline") {
  SweepSpec spec = fig2a_spec();
  spec.axis1 = {ParamKey::phi, {3 * pi / 2}};
  const SweepResult result = run_sweep(spec, 1);
  REQUIRE(result.rows.size() == 1);

  SystemParams<double> p = spec.base;
  p.phi = 3 * pi / 2;
  const auto rep = analyze_pair(
      solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p)), ModePair::ab);
  const SweepRow& row = result.rows[0];
  CHECK(row.stable);
  CHECK(bitwise_equal(row.e_n, rep.e_n));
  CHECK(bitwise_equal(row.g_fwd, rep.g_fwd));
  CHECK(bitwise_equal(row.g_bwd, rep.g_bwd));
  CHECK(row.regime == rep.regime);
}

TEST_CASE("sweep output is deterministic across worker counts") {
  SweepSpec spec = fig2a_spec();
  spec.axis1.grid = linspace(0.0, 2 * pi, 101); // keep the unit test quick
  const SweepResult serial = run_sweep(spec, 1);
  for (const int workers : {2, 3, 7}) {
    const SweepResult parallel = run_sweep(spec, workers);
    REQUIRE(parallel.rows.size() == serial.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i)
      CHECK(rows_bitwise_equal(serial.rows[i], parallel.rows[i]));
  }
}

TEST_CASE("phase sweep of the reference loop") {
  const SweepResult result = run_sweep(fig2a_spec(), 0);
  REQUIRE(result.rows.size() == 629);
  size_t argmax_en = 0, argmin_en = 0, argmax_gf = 0, argmin_gf = 0;
  for (size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    REQUIRE(row.stable);
    CHECK(row.g_bwd <= 1e-12); // one-way over the whole period
    if (row.e_n > result.rows[argmax_en].e_n) argmax_en = i;
    if (row.e_n < result.rows[argmin_en].e_n) argmin_en = i;
    if (row.g_fwd > result.rows[argmax_gf].g_fwd) argmax_gf = i;
    if (row.g_fwd < result.rows[argmin_gf].g_fwd) argmin_gf = i;
  }
  CHECK(argmax_en == 471); // grid point nearest 3pi/2
  CHECK(argmax_gf == 471);
  CHECK(argmin_en == 157); // grid point nearest pi/2
  CHECK(argmin_gf == 157);
  // endpoints phi = 0 and phi = 2pi agree
  CHECK(std::abs(result.rows.front().e_n - result.rows.back().e_n) < 1e-10);
  CHECK(std::abs(result.rows.front().g_fwd - result.rows.back().g_fwd) < 1e-10);
}

TEST_CASE("unstable grid points are sentinel rows, not errors") {
  SweepSpec spec;
  spec.base.kappa_a = spec.base.kappa_b = 1.0;
  spec.base.gamma_c = 5.0;
  spec.base.phi = pi / 2;
  spec.axis1 = {ParamKey::lambda, linspace(0.0, 2.0, 21)}; // direct path only
  const SweepResult result = run_sweep(spec, 0);
  REQUIRE(result.rows.size() == 21);
  for (const SweepRow& row : result.rows) {
    const bool expect_stable = row.axis1 < 1.0; // threshold lambda^2 < kappa^2
    CHECK(row.stable == expect_stable);
    if (!row.stable) {
      CHECK(std::isnan(row.e_n));
      CHECK(std::isnan(row.abs_corr));
      CHECK_FALSE(row.regime.has_value());
    }
  }
}

TEST_CASE("sweep rows on the interference phases match the closed forms") {
  SweepSpec spec = fig2a_spec();
  spec.axis1 = {ParamKey::phi, {pi / 2, 3 * pi / 2}};
  const SweepResult result = run_sweep(spec, 0);
  for (const SweepRow& row : result.rows) {
    SystemParams<double> p = spec.base;
    p.phi = row.axis1;
    const auto closed = analytic_moments(p);
    CHECK(std::abs(row.n_first - closed.n_a) <= 1e-8 * std::max(1.0, closed.n_a));
    CHECK(std::abs(row.n_second - closed.n_b) <= 1e-8 * std::max(1.0, closed.n_b));
    CHECK(std::abs(row.abs_corr - std::abs(closed.corr)) <=
          1e-8 * std::max(1.0, std::abs(closed.corr)));
  }
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = fig2a_spec();
  SUBCASE("empty grid") {
    spec.axis1.grid.clear();
    CHECK_THROWS_AS(run_sweep(spec, 1), contract_error);
  }
  SUBCASE("non-monotone grid") {
    spec.axis1.grid = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(run_sweep(spec, 1), contract_error);
  }
  SUBCASE("no pairs") {
    spec.pairs.clear();
    CHECK_THROWS_AS(run_sweep(spec, 1), contract_error);
  }
}

TEST_CASE("two-axis sweep covers the grid in axis1-major order") {
  SweepSpec spec = fig2a_spec();
  spec.axis1 = {ParamKey::gamma_c, {1.0, 2.0, 3.0}};
  spec.axis2 = Axis{ParamKey::lambda, {0.0, 0.4}};
  spec.pairs = {ModePair::ab, ModePair::ac};
  spec.base.phi = 3 * pi / 2;
  const SweepResult result = run_sweep(spec, 0);
  REQUIRE(result.rows.size() == 3 * 2 * 2);
  CHECK(result.axis1_name == "gamma_c");
  REQUIRE(result.axis2_name.has_value());
  CHECK(*result.axis2_name == "lambda");
  CHECK(result.rows[0].axis1 == 1.0);
  CHECK(*result.rows[0].axis2 == 0.0);
  CHECK(result.rows[0].pair == ModePair::ab);
  CHECK(result.rows[1].pair == ModePair::ac);
  CHECK(*result.rows[2].axis2 == 0.4);
  CHECK(result.rows[4].axis1 == 2.0);
}

TEST_CASE("figure sweeps") {
  SUBCASE("unknown figure id") {
    CHECK_THROWS_AS(reproduce_figure("9z"), contract_error);
  }
  SUBCASE("figure 4: constructive interference steers both ways at small gamma_c") {
    const auto figures = reproduce_figure("4", 0);
    REQUIRE(figures.size() == 1);
    const auto& rows = figures[0].result.rows;
    // rows alternate lambda = 0 and lambda = 1 per gamma_c point
    int both_ways_where_indirect_has_none = 0;
    for (size_t i = 0; i + 1 < rows.size(); i += 2) {
      const SweepRow& indirect = rows[i];
      const SweepRow& loop = rows[i + 1];
      REQUIRE(indirect.stable);
      REQUIRE(loop.stable);
      if (indirect.g_fwd <= 1e-12 && indirect.g_bwd <= 1e-12 &&
          loop.regime == SteeringRegime::two_way)
        ++both_ways_where_indirect_has_none;
    }
    CHECK(both_ways_where_indirect_has_none > 50);
  }
  SUBCASE("figure 5: the loop broadens the stable range past lambda = kappa") {
    const auto figures = reproduce_figure("5b", 0);
    REQUIRE(figures.size() == 2);
    const auto& direct = figures[0].result.rows;
    const auto& loop = figures[1].result.rows;
    double direct_edge = 0.0, loop_edge = 0.0;
    for (const auto& row : direct)
      if (row.stable) direct_edge = row.axis1;
    for (const auto& row : loop)
      if (row.stable) loop_edge = row.axis1;
    CHECK(direct_edge < 1.0 + 1e-9);
    CHECK(loop_edge > 2.5);
    // enhancement by the interfering paths where both are stable
    for (size_t i = 0; i < direct.size(); ++i) {
      if (!direct[i].stable) break;
      CHECK(loop[i].e_n >= direct[i].e_n - 1e-12);
    }
  }
}
