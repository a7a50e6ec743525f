#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

#include "tristeer/errors.hpp"

namespace tristeer {

template <typename Scalar> using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar> using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar> using Mat6 = Eigen::Matrix<Scalar, 6, 6>;

using Mat2d = Mat2<double>;
using Mat4d = Mat4<double>;
using Mat6d = Mat6<double>;

/// Mode pairs of the loop, in the quadrature ordering (X_a,Y_a,X_b,Y_b,X_c,Y_c).
enum class ModePair { ab, ac, bc };

/// Steering direction relative to a pair: forward = first steers second.
enum class SteerDirection { forward, backward };

enum class SteeringRegime { no_way, one_way_forward, one_way_backward, two_way };

constexpr std::string_view to_string(ModePair pair) {
  switch (pair) {
    case ModePair::ab: return "ab";
    case ModePair::ac: return "ac";
    case ModePair::bc: return "bc";
  }
  return "?";
}

constexpr std::string_view to_string(SteeringRegime regime) {
  switch (regime) {
    case SteeringRegime::no_way: return "no-way";
    case SteeringRegime::one_way_forward: return "one-way-forward";
    case SteeringRegime::one_way_backward: return "one-way-backward";
    case SteeringRegime::two_way: return "two-way";
  }
  return "?";
}

/// Row/column indices of the 4x4 principal submatrix belonging to a pair.
constexpr std::array<int, 4> pair_indices(ModePair pair) {
  switch (pair) {
    case ModePair::ab: return {0, 1, 2, 3};
    case ModePair::ac: return {0, 1, 4, 5};
    case ModePair::bc: return {2, 3, 4, 5};
  }
  throw contract_error("pair_indices: invalid pair label");
}

} // namespace tristeer
