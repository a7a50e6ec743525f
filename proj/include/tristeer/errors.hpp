#pragma once

#include <stdexcept>
#include <string>

namespace tristeer {

/// A physical parameter is outside its admissible domain (non-positive rate,
/// negative occupation, non-positive frequency, ...).
struct param_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its contract (wrong phase family, wrong
/// pair label, coupling present where it must vanish, non-symmetric input).
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// The drift matrix is not stable enough for a steady state to exist.
struct stability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric breakdown: eigensolver non-convergence, singular linear solve,
/// residual above contract, unphysical intermediate value.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting results.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace tristeer
