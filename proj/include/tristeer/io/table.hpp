#pragma once

#include <string>
#include <string_view>

#include "tristeer/sweep.hpp"

namespace tristeer::io {

/// Fixed CSV column order; axis values first, measures per pair row,
/// stability flag ahead of them so unstable sentinel rows are obvious.
inline constexpr std::string_view csv_header =
    "axis1,axis2,stable,pair,E_N,G_fwd,G_bwd,regime,n_first,n_second,abs_corr";

/// Shortest decimal form that parses back to the same double ("nan" for the
/// unstable sentinel), so emitted tables diff cleanly across platforms.
std::string format_double(double value);

/// Inverse of format_double; understands "nan".
std::optional<double> parse_double(std::string_view text);

std::string to_csv(const SweepResult& result);
SweepResult from_csv(std::string_view text);

/// JSON mirror of the CSV schema: axis names at the top, one object per row
/// with the same column names. NaN measures and a missing axis2 are null.
std::string to_json(const SweepResult& result);
SweepResult from_json(std::string_view text);

void write_file(const std::string& path, std::string_view content);

} // namespace tristeer::io
