#pragma once

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tristeer/analytic.hpp"
#include "tristeer/lyapunov.hpp"

namespace tristeer {

/// Sweepable parameters. nbar_all is a convenience key that drives the three
/// occupations together (used for uniformly thermal environments).
enum class ParamKey {
  kappa_a, kappa_b, gamma_c, lambda, phi, g_a, g_b,
  nbar_a, nbar_b, nbar_c, nbar_all,
};

constexpr std::string_view to_string(ParamKey key) {
  switch (key) {
    case ParamKey::kappa_a: return "kappa_a";
    case ParamKey::kappa_b: return "kappa_b";
    case ParamKey::gamma_c: return "gamma_c";
    case ParamKey::lambda: return "lambda";
    case ParamKey::phi: return "phi";
    case ParamKey::g_a: return "g_a";
    case ParamKey::g_b: return "g_b";
    case ParamKey::nbar_a: return "nbar_a";
    case ParamKey::nbar_b: return "nbar_b";
    case ParamKey::nbar_c: return "nbar_c";
    case ParamKey::nbar_all: return "nbar_all";
  }
  return "?";
}

inline std::optional<ParamKey> param_key_from_string(std::string_view name) {
  for (ParamKey key : {ParamKey::kappa_a, ParamKey::kappa_b, ParamKey::gamma_c,
                       ParamKey::lambda, ParamKey::phi, ParamKey::g_a, ParamKey::g_b,
                       ParamKey::nbar_a, ParamKey::nbar_b, ParamKey::nbar_c,
                       ParamKey::nbar_all})
    if (name == to_string(key)) return key;
  return std::nullopt;
}

inline void set_param(SystemParams<double>& p, ParamKey key, double value) {
  switch (key) {
    case ParamKey::kappa_a: p.kappa_a = value; return;
    case ParamKey::kappa_b: p.kappa_b = value; return;
    case ParamKey::gamma_c: p.gamma_c = value; return;
    case ParamKey::lambda: p.lambda = value; return;
    case ParamKey::phi: p.phi = value; return;
    case ParamKey::g_a: p.g_a = value; return;
    case ParamKey::g_b: p.g_b = value; return;
    case ParamKey::nbar_a: p.nbar_a = value; return;
    case ParamKey::nbar_b: p.nbar_b = value; return;
    case ParamKey::nbar_c: p.nbar_c = value; return;
    case ParamKey::nbar_all: p.nbar_a = p.nbar_b = p.nbar_c = value; return;
  }
}

struct Axis {
  ParamKey key{ParamKey::phi};
  std::vector<double> grid;
};

struct SweepSpec {
  SystemParams<double> base;
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<ModePair> pairs{ModePair::ab};
};

/// One output row: one grid point, one pair. Measures are NaN and the regime
/// is absent on unstable points; those rows are kept, not dropped, so
/// stability boundaries stay visible in the output.
struct SweepRow {
  double axis1{};
  std::optional<double> axis2;
  bool stable{};
  ModePair pair{ModePair::ab};
  double e_n{};
  double g_fwd{};
  double g_bwd{};
  std::optional<SteeringRegime> regime;
  double n_first{};
  double n_second{};
  double abs_corr{};
};

struct SweepResult {
  std::string axis1_name;
  std::optional<std::string> axis2_name;
  std::vector<SweepRow> rows;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw contract_error("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> grid(static_cast<size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[static_cast<size_t>(i)] = lo + step * i;
  grid.back() = hi;
  return grid;
}

/// Default phase grid: 629 points spanning [0, 2pi], step about 0.01 rad.
/// Both endpoints are included, which makes 2pi-periodicity directly visible
/// in sweep output.
inline std::vector<double> phase_grid() {
  return linspace(0.0, 2 * std::numbers::pi, 629);
}

inline void validate(const SweepSpec& spec) {
  const auto check_axis = [](const Axis& axis, const char* name) {
    if (axis.grid.empty())
      throw contract_error(std::string(name) + ": grid must be non-empty");
    const bool ascending = axis.grid.size() < 2 || axis.grid[1] > axis.grid[0];
    for (size_t i = 1; i < axis.grid.size(); ++i) {
      const bool ok = ascending ? axis.grid[i] > axis.grid[i - 1]
                                : axis.grid[i] < axis.grid[i - 1];
      if (!ok)
        throw contract_error(std::string(name) + ": grid must be strictly monotone");
    }
  };
  check_axis(spec.axis1, "axis1");
  if (spec.axis2) check_axis(*spec.axis2, "axis2");
  if (spec.pairs.empty())
    throw contract_error("sweep: at least one mode pair is required");
}

namespace detail {

inline void fill_point_rows(const SweepSpec& spec, double v1,
                            std::optional<double> v2, SweepRow* out) {
  SystemParams<double> p = spec.base;
  set_param(p, spec.axis1.key, v1);
  if (v2) set_param(p, spec.axis2->key, *v2);

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const double max_re = max_real_eigenvalue(build_drift_matrix(p));
  const bool solvable = max_re < -lyapunov_margin_floor;

  Mat6d cm;
  if (solvable) cm = solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p));
  for (size_t k = 0; k < spec.pairs.size(); ++k) {
    SweepRow& row = out[k];
    row.axis1 = v1;
    row.axis2 = v2;
    row.pair = spec.pairs[k];
    row.stable = solvable;
    if (!solvable) {
      row.e_n = row.g_fwd = row.g_bwd = nan;
      row.n_first = row.n_second = row.abs_corr = nan;
      row.regime.reset();
      continue;
    }
    const CorrelationReport<double> rep = analyze_pair(cm, spec.pairs[k]);
    row.e_n = rep.e_n;
    row.g_fwd = rep.g_fwd;
    row.g_bwd = rep.g_bwd;
    row.regime = rep.regime;
    row.n_first = rep.moments.n_first;
    row.n_second = rep.moments.n_second;
    row.abs_corr = std::abs(rep.moments.corr);
  }
}

} // namespace detail

/// Evaluates the full pipeline over the grid. Each grid point is an
/// independent pure computation; points are distributed over `workers`
/// threads (0 = hardware concurrency) and written into a preallocated row
/// buffer, so the assembled output is identical for any worker count.
///
/// Row order: axis1 outer, axis2 inner, pairs innermost.
inline SweepResult run_sweep(const SweepSpec& spec, int workers = 0) {
  validate(spec);
  const size_t n1 = spec.axis1.grid.size();
  const size_t n2 = spec.axis2 ? spec.axis2->grid.size() : 1;
  const size_t npairs = spec.pairs.size();
  const size_t npoints = n1 * n2;

  SweepResult result;
  result.axis1_name = std::string(to_string(spec.axis1.key));
  if (spec.axis2) result.axis2_name = std::string(to_string(spec.axis2->key));
  result.rows.resize(npoints * npairs);

  size_t nthreads = workers > 0 ? static_cast<size_t>(workers)
                                : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, npoints);

  const auto work = [&](size_t tid, std::exception_ptr& error) noexcept {
    try {
      for (size_t point = tid; point < npoints; point += nthreads) {
        const size_t i1 = point / n2;
        const size_t i2 = point % n2;
        const double v1 = spec.axis1.grid[i1];
        const std::optional<double> v2 =
            spec.axis2 ? std::optional<double>(spec.axis2->grid[i2]) : std::nullopt;
        detail::fill_point_rows(spec, v1, v2, result.rows.data() + point * npairs);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  if (nthreads <= 1) {
    std::exception_ptr error;
    work(0, error);
    if (error) std::rethrow_exception(error);
  } else {
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t)
      pool.emplace_back(work, t, std::ref(errors[t]));
    for (auto& th : pool) th.join();
    for (const auto& error : errors)
      if (error) std::rethrow_exception(error);
  }
  return result;
}

} // namespace tristeer
