#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "tristeer/model.hpp"

namespace tristeer {

/// solve_steady_state refuses drift matrices whose stability margin is below
/// this floor; so close to marginal the covariance diverges and the result
/// would be noise.
inline constexpr double lyapunov_margin_floor = 1e-9;

/// Residual contract of the solvers, relative to max(1, |D|_max).
inline constexpr double lyapunov_residual_tol = 1e-10;

/// |M V + V M^T + D|_max
template <typename DerivedM, typename DerivedD, typename DerivedV>
auto lyapunov_residual(const Eigen::MatrixBase<DerivedM>& m,
                       const Eigen::MatrixBase<DerivedD>& d,
                       const Eigen::MatrixBase<DerivedV>& v) {
  return (m.derived() * v.derived() + v.derived() * m.derived().transpose() + d.derived())
      .cwiseAbs()
      .maxCoeff();
}

namespace detail {

template <typename Scalar>
void require_solvable(const Mat6<Scalar>& m) {
  const Scalar max_re = max_real_eigenvalue(m);
  if (!(max_re < -Scalar(lyapunov_margin_floor))) {
    std::ostringstream msg;
    msg << "steady state requires a stable drift matrix (max Re eigenvalue = "
        << max_re << ", needs < " << -lyapunov_margin_floor << ")";
    throw stability_error(msg.str());
  }
}

template <typename Scalar>
void check_residual(const Mat6<Scalar>& m, const Mat6<Scalar>& d,
                    const Mat6<Scalar>& v, const char* where) {
  const Scalar bound =
      Scalar(lyapunov_residual_tol) * std::max(Scalar(1), d.cwiseAbs().maxCoeff());
  const Scalar res = lyapunov_residual(m, d, v);
  if (!(res <= bound)) {
    std::ostringstream msg;
    msg << where << ": residual " << res << " exceeds contract " << bound
        << "; drift matrix:\n" << m;
    throw numerical_error(msg.str());
  }
}

} // namespace detail

/// Steady-state covariance from M V + V M^T = -D, solved as the dense
/// 36-unknown system (I kron M + M kron I) vec(V) = -vec(D), with one
/// refinement pass. The output is exactly symmetrized.
///
/// Throws stability_error when M is unstable or closer than
/// lyapunov_margin_floor to marginal, numerical_error when the residual
/// contract cannot be met.
template <typename DerivedM, typename DerivedD>
auto solve_steady_state(const Eigen::MatrixBase<DerivedM>& m_expr,
                        const Eigen::MatrixBase<DerivedD>& d_expr) {
  static_assert(DerivedM::RowsAtCompileTime == 6 && DerivedM::ColsAtCompileTime == 6 &&
                    DerivedD::RowsAtCompileTime == 6 && DerivedD::ColsAtCompileTime == 6,
                "expects 6x6 drift and diffusion matrices");
  using Scalar = typename DerivedM::Scalar;
  const Mat6<Scalar> m = m_expr;
  const Mat6<Scalar> d = d_expr;
  detail::require_solvable(m);

  using Big = Eigen::Matrix<Scalar, 36, 36>;
  using Vec = Eigen::Matrix<Scalar, 36, 1>;
  Big a = Big::Zero();
  for (int j = 0; j < 6; ++j) {
    a.template block<6, 6>(6 * j, 6 * j) += m; // I kron M
    for (int k = 0; k < 6; ++k)                // M kron I
      a.template block<6, 6>(6 * j, 6 * k).diagonal().array() += m(j, k);
  }
  const Eigen::PartialPivLU<Big> lu(a);

  Vec x = lu.solve(-Eigen::Map<const Vec>(d.data()));
  Mat6<Scalar> v = Eigen::Map<const Mat6<Scalar>>(x.data());
  v = ((v + v.transpose()) / Scalar(2)).eval();

  // one step of iterative refinement tightens the residual to rounding level
  const Mat6<Scalar> r = m * v + v * m.transpose() + d;
  const Vec dx = lu.solve(-Eigen::Map<const Vec>(r.data()));
  v += Eigen::Map<const Mat6<Scalar>>(dx.data());
  v = ((v + v.transpose()) / Scalar(2)).eval();

  detail::check_residual(m, d, v, "solve_steady_state");
  return v;
}

/// Bartels-Stewart variant: real Schur form of M, then blockwise
/// back-substitution of T Y + Y T^T = -U^T D U over the 1x1/2x2 diagonal
/// blocks, and V = U Y U^T. Same contract as solve_steady_state; kept as an
/// independent route and cross-checked against it in the test suite.
template <typename DerivedM, typename DerivedD>
auto solve_steady_state_schur(const Eigen::MatrixBase<DerivedM>& m_expr,
                              const Eigen::MatrixBase<DerivedD>& d_expr) {
  static_assert(DerivedM::RowsAtCompileTime == 6 && DerivedM::ColsAtCompileTime == 6 &&
                    DerivedD::RowsAtCompileTime == 6 && DerivedD::ColsAtCompileTime == 6,
                "expects 6x6 drift and diffusion matrices");
  using Scalar = typename DerivedM::Scalar;
  const Mat6<Scalar> m = m_expr;
  const Mat6<Scalar> d = d_expr;
  detail::require_solvable(m);

  Eigen::RealSchur<Mat6<Scalar>> schur(m);
  if (schur.info() != Eigen::Success)
    throw numerical_error("solve_steady_state_schur: Schur decomposition failed");
  const Mat6<Scalar> t = schur.matrixT();
  const Mat6<Scalar> u = schur.matrixU();
  const Mat6<Scalar> c = -(u.transpose() * d * u).eval();

  // diagonal block partition of the quasi-triangular factor
  std::vector<int> start, size;
  for (int i = 0; i < 6;) {
    const int sz = (i + 1 < 6 && t(i + 1, i) != Scalar(0)) ? 2 : 1;
    start.push_back(i);
    size.push_back(sz);
    i += sz;
  }
  const int nb = static_cast<int>(start.size());

  using Small = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
  using SmallVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 4, 1>;

  Mat6<Scalar> y = Mat6<Scalar>::Zero();
  for (int bj = nb - 1; bj >= 0; --bj) {
    for (int bi = nb - 1; bi >= 0; --bi) {
      const int i0 = start[bi], p = size[bi];
      const int j0 = start[bj], q = size[bj];
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> rhs =
          c.block(i0, j0, p, q);
      for (int bk = bi + 1; bk < nb; ++bk)
        rhs -= t.block(i0, start[bk], p, size[bk]) * y.block(start[bk], j0, size[bk], q);
      for (int bl = bj + 1; bl < nb; ++bl)
        rhs -= y.block(i0, start[bl], p, size[bl]) *
               t.block(j0, start[bl], q, size[bl]).transpose();

      // small Sylvester T_ii X + X T_jj^T = rhs via its Kronecker system
      Small k(p * q, p * q);
      k.setZero();
      for (int col = 0; col < q; ++col) {
        k.block(col * p, col * p, p, p) += t.block(i0, i0, p, p);
        for (int col2 = 0; col2 < q; ++col2)
          k.block(col * p, col2 * p, p, p).diagonal().array() += t(j0 + col, j0 + col2);
      }
      SmallVec vec_rhs(p * q);
      for (int col = 0; col < q; ++col)
        vec_rhs.segment(col * p, p) = rhs.col(col);
      Eigen::FullPivLU<Small> lu(k);
      if (!lu.isInvertible())
        throw numerical_error(
            "solve_steady_state_schur: singular diagonal-block system "
            "(eigenvalue pair sums to zero)");
      const SmallVec sol = lu.solve(vec_rhs);
      for (int col = 0; col < q; ++col)
        y.block(i0, j0 + col, p, 1) = sol.segment(col * p, p);
    }
  }

  Mat6<Scalar> v = u * y * u.transpose();
  v = ((v + v.transpose()) / Scalar(2)).eval();
  detail::check_residual(m, d, v, "solve_steady_state_schur");
  return v;
}

/// Symplectic spectrum of an even-dimensional covariance matrix in
/// (X,Y)-pair ordering: the moduli of the eigenvalues of i*Omega*V, one per
/// mode. Physical states have every value >= 1/2 in this convention.
template <typename Derived>
auto symplectic_eigenvalues(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  constexpr int n = Derived::RowsAtCompileTime;
  static_assert(n != Eigen::Dynamic && n % 2 == 0 && Derived::ColsAtCompileTime == n,
                "expects a fixed-size even-dimensional square matrix");
  Eigen::Matrix<Scalar, n, n> form = Eigen::Matrix<Scalar, n, n>::Zero();
  for (int i = 0; i < n / 2; ++i) {
    form(2 * i, 2 * i + 1) = Scalar(1);
    form(2 * i + 1, 2 * i) = Scalar(-1);
  }
  const Eigen::Matrix<Scalar, n, n> omega_v = form * v.derived();
  Eigen::EigenSolver<Eigen::Matrix<Scalar, n, n>> solver(omega_v, false);
  if (solver.info() != Eigen::Success)
    throw numerical_error("symplectic_eigenvalues: eigensolver did not converge");
  std::array<Scalar, n> moduli;
  for (int i = 0; i < n; ++i) moduli[static_cast<size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // moduli come in equal pairs (+-i nu); keep one representative of each
  Eigen::Matrix<Scalar, n / 2, 1> nus;
  for (int i = 0; i < n / 2; ++i) nus[i] = moduli[static_cast<size_t>(2 * i)];
  return nus;
}

/// Uncertainty bound on the symplectic spectrum, with rounding slack.
inline constexpr double physicality_tol = 1e-9;

template <typename Scalar, int Modes>
struct PhysicalityReport {
  Eigen::Matrix<Scalar, Modes, 1> symplectic_spectrum;
  Scalar min_value{};
  bool physical{};
};

/// Checks the uncertainty relation nu_k >= 1/2 - physicality_tol on a
/// symmetric covariance matrix. Non-symmetric input is a contract error.
template <typename Derived>
auto verify_physicality(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  constexpr int n = Derived::RowsAtCompileTime;
  const Scalar scale = std::max(Scalar(1), v.derived().cwiseAbs().maxCoeff());
  if ((v.derived() - v.derived().transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale)
    throw contract_error("verify_physicality: covariance matrix is not symmetric");
  PhysicalityReport<Scalar, n / 2> report;
  report.symplectic_spectrum = symplectic_eigenvalues(v);
  report.min_value = report.symplectic_spectrum.minCoeff();
  report.physical = report.min_value >= Scalar(0.5) - Scalar(physicality_tol);
  return report;
}

} // namespace tristeer
