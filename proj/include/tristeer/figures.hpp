#pragma once

#include <string>
#include <vector>

#include "tristeer/sweep.hpp"

namespace tristeer {

/// One labeled sweep of a figure; figures with several curve families (two
/// phases, with/without the direct path) produce one result per family.
struct FigureResult {
  std::string label;
  SweepSpec spec;
  SweepResult result;
};

const std::vector<std::string>& known_figures();

/// Runs the sweeps behind one of the reference figures. Phase sweeps use the
/// default 629-point grid on [0, 2pi]; the remaining axis ranges are
/// documented defaults chosen to cover the interesting features (stability
/// edges, zero crossings). Unknown ids are a contract error.
std::vector<FigureResult> reproduce_figure(const std::string& id, int workers = 0);

} // namespace tristeer
