#pragma once

#include <string>

#include "tristeer/sweep.hpp"

namespace tristeer::io {

/// Static line chart of the sweep: E_N, G_fwd, G_bwd against axis1, one
/// series per (pair, axis2 value, measure). Unstable points break the line.
std::string render_svg(const SweepResult& result, const std::string& title = "");

} // namespace tristeer::io
