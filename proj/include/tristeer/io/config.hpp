#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tristeer/sweep.hpp"

namespace tristeer::io {

enum class OutputFormat { csv, json, both };

/// Fully validated run configuration: base parameters, optional sweep axes,
/// pair list and output choices.
struct RunConfig {
  SystemParams<double> base;
  std::optional<Axis> axis1;
  std::optional<Axis> axis2;
  std::vector<ModePair> pairs{ModePair::ab};
  int workers = 0; // 0 = hardware concurrency
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  bool plot = false;

  /// Sweep view of the config; contract error when no axis1 is defined.
  SweepSpec sweep_spec() const;
};

struct ParseIssue {
  int line = 0; // 0 when the issue is not tied to one line
  std::string key;
  std::string message;
};

/// Either a config or the full list of problems found; parsing reports every
/// issue, not just the first.
struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ParseIssue> issues;

  bool ok() const { return config.has_value(); }
  std::string issues_text() const;
};

/// Parses the flat key-value config grammar (UTF-8, '#' comments,
/// `key = value` lines). Phase-valued entries accept plain radians or
/// "<number>pi" (e.g. "1.5pi").
ParseResult parse_config(std::string_view text);

/// Same, reading from a file; throws io_error when the file cannot be read.
ParseResult parse_config_file(const std::string& path);

/// Number literal parser; pi suffixes are accepted only when allow_pi.
std::optional<double> parse_number(std::string_view text, bool allow_pi);

} // namespace tristeer::io
