#include "tristeer/io/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace tristeer::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_quotes(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(trim(s.substr(pos)));
      return parts;
    }
    parts.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
}

std::optional<double> parse_plain(std::string_view s) {
  double value{};
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

struct RawEntry {
  std::string value;
  int line;
};

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = {
      "kappa_a", "kappa_b", "gamma_c", "lambda", "phi", "g_a", "g_b",
      "nbar_a", "nbar_b", "nbar_c",
      "axis1", "axis1_range", "axis1_values",
      "axis2", "axis2_range", "axis2_values",
      "pairs", "workers", "out", "format", "plot"};
  return keys;
}

} // namespace

std::optional<double> parse_number(std::string_view text, bool allow_pi) {
  text = trim(text);
  if (allow_pi && text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
    const std::string_view head = trim(text.substr(0, text.size() - 2));
    double factor = 1.0;
    if (!head.empty()) {
      if (head == "-") {
        factor = -1.0;
      } else {
        const auto parsed = parse_plain(head);
        if (!parsed) return std::nullopt;
        factor = *parsed;
      }
    }
    return factor * std::numbers::pi;
  }
  return parse_plain(text);
}

SweepSpec RunConfig::sweep_spec() const {
  if (!axis1)
    throw contract_error("config defines no sweep axis (axis1 is required for sweeps)");
  SweepSpec spec;
  spec.base = base;
  spec.axis1 = *axis1;
  spec.axis2 = axis2;
  spec.pairs = pairs;
  return spec;
}

std::string ParseResult::issues_text() const {
  std::ostringstream out;
  for (const auto& issue : issues) {
    out << "config error";
    if (issue.line > 0) out << " (line " << issue.line << ")";
    if (!issue.key.empty()) out << " [" << issue.key << "]";
    out << ": " << issue.message << "\n";
  }
  return out.str();
}

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  auto issue = [&](int line, std::string key, std::string message) {
    result.issues.push_back({line, std::move(key), std::move(message)});
  };

  std::map<std::string, RawEntry, std::less<>> entries;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    // strip comments, respecting quoted values
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      issue(line_no, "", "expected 'key = value'");
      continue;
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = strip_quotes(trim(line.substr(eq + 1)));
    if (key.empty()) {
      issue(line_no, "", "missing key before '='");
      continue;
    }
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      issue(line_no, key, "unknown key");
      continue;
    }
    if (entries.count(key)) {
      issue(line_no, key, "duplicate key (first set on line " +
                              std::to_string(entries.at(key).line) + ")");
      continue;
    }
    entries.emplace(key, RawEntry{std::string(value), line_no});
  }

  RunConfig config;

  const auto take = [&](std::string_view key) -> std::optional<RawEntry> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    RawEntry entry = it->second;
    entries.erase(it);
    return entry;
  };

  // --- scalar system parameters; returns presence, a bad value is its own issue
  const auto read_param = [&](std::string_view key, double& slot, bool allow_pi) {
    const auto entry = take(key);
    if (!entry) return false;
    const auto value = parse_number(entry->value, allow_pi);
    if (!value)
      issue(entry->line, std::string(key),
            allow_pi ? "expected a number or '<number>pi'" : "expected a number");
    else
      slot = *value;
    return true;
  };

  bool have_ka = read_param("kappa_a", config.base.kappa_a, false);
  bool have_kb = read_param("kappa_b", config.base.kappa_b, false);
  bool have_gc = read_param("gamma_c", config.base.gamma_c, false);
  read_param("lambda", config.base.lambda, false);
  read_param("phi", config.base.phi, true);
  read_param("g_a", config.base.g_a, false);
  read_param("g_b", config.base.g_b, false);
  read_param("nbar_a", config.base.nbar_a, false); // occupations default to 0
  read_param("nbar_b", config.base.nbar_b, false);
  read_param("nbar_c", config.base.nbar_c, false);

  // --- sweep axes
  const auto read_axis = [&](std::string_view name) -> std::optional<Axis> {
    const auto key_entry = take(name);
    const auto range_entry = take(std::string(name) + "_range");
    const auto values_entry = take(std::string(name) + "_values");
    if (!key_entry) {
      if (range_entry)
        issue(range_entry->line, std::string(name) + "_range",
              std::string(name) + " is not defined");
      if (values_entry)
        issue(values_entry->line, std::string(name) + "_values",
              std::string(name) + " is not defined");
      return std::nullopt;
    }
    const auto key = param_key_from_string(trim(key_entry->value));
    if (!key) {
      issue(key_entry->line, std::string(name),
            "unknown parameter name '" + key_entry->value + "'");
      return std::nullopt;
    }
    const bool allow_pi = *key == ParamKey::phi;
    Axis axis{*key, {}};
    if (range_entry && values_entry) {
      issue(values_entry->line, std::string(name) + "_values",
            "give either a range or a value list, not both");
      return std::nullopt;
    }
    if (range_entry) {
      const auto parts = split(range_entry->value, ':');
      std::optional<double> lo, hi;
      long count = -1;
      if (parts.size() == 3) {
        lo = parse_number(parts[0], allow_pi);
        hi = parse_number(parts[1], allow_pi);
        const auto n = parse_plain(parts[2]);
        if (n && *n > 0 && *n == static_cast<long>(*n)) count = static_cast<long>(*n);
      }
      if (parts.size() != 3 || !lo || !hi || count < 1) {
        issue(range_entry->line, std::string(name) + "_range",
              "expected 'start : stop : count' with integer count >= 1");
        return std::nullopt;
      }
      axis.grid = linspace(*lo, *hi, static_cast<int>(count));
    } else if (values_entry) {
      for (const auto part : split(values_entry->value, ',')) {
        const auto value = parse_number(part, allow_pi);
        if (!value) {
          issue(values_entry->line, std::string(name) + "_values",
                "bad number '" + std::string(part) + "'");
          return std::nullopt;
        }
        axis.grid.push_back(*value);
      }
    } else {
      issue(key_entry->line, std::string(name),
            std::string(name) + "_range or " + std::string(name) + "_values is required");
      return std::nullopt;
    }
    if (axis.grid.empty()) {
      issue(key_entry->line, std::string(name), "grid must be non-empty");
      return std::nullopt;
    }
    const bool ascending = axis.grid.size() < 2 || axis.grid[1] > axis.grid[0];
    for (size_t i = 1; i < axis.grid.size(); ++i) {
      const bool ok = ascending ? axis.grid[i] > axis.grid[i - 1]
                                : axis.grid[i] < axis.grid[i - 1];
      if (!ok) {
        issue(key_entry->line, std::string(name), "grid must be strictly monotone");
        return std::nullopt;
      }
    }
    return axis;
  };

  config.axis1 = read_axis("axis1");
  config.axis2 = read_axis("axis2");
  if (!config.axis1 && config.axis2) {
    issue(0, "axis2", "axis2 requires axis1");
    config.axis2.reset();
  }

  // rates are required unless a sweep axis drives them
  const auto axis_covers = [&](ParamKey key) {
    return (config.axis1 && config.axis1->key == key) ||
           (config.axis2 && config.axis2->key == key);
  };
  if (!have_ka && !axis_covers(ParamKey::kappa_a))
    issue(0, "kappa_a", "required key is missing");
  if (!have_kb && !axis_covers(ParamKey::kappa_b))
    issue(0, "kappa_b", "required key is missing");
  if (!have_gc && !axis_covers(ParamKey::gamma_c))
    issue(0, "gamma_c", "required key is missing");

  // --- pair list
  if (const auto entry = take("pairs")) {
    config.pairs.clear();
    for (const auto part : split(entry->value, ',')) {
      if (part == "ab") config.pairs.push_back(ModePair::ab);
      else if (part == "ac") config.pairs.push_back(ModePair::ac);
      else if (part == "bc") config.pairs.push_back(ModePair::bc);
      else issue(entry->line, "pairs", "unknown pair '" + std::string(part) + "' (use ab, ac, bc)");
    }
    if (config.pairs.empty())
      issue(entry->line, "pairs", "at least one pair is required");
  }

  // --- output knobs
  if (const auto entry = take("workers")) {
    const auto n = parse_plain(entry->value);
    if (!n || *n < 1 || *n != static_cast<int>(*n))
      issue(entry->line, "workers", "expected a positive integer");
    else
      config.workers = static_cast<int>(*n);
  }
  if (const auto entry = take("out")) config.out_dir = entry->value;
  if (const auto entry = take("format")) {
    if (entry->value == "csv") config.format = OutputFormat::csv;
    else if (entry->value == "json") config.format = OutputFormat::json;
    else if (entry->value == "both") config.format = OutputFormat::both;
    else issue(entry->line, "format", "expected csv, json or both");
  }
  if (const auto entry = take("plot")) {
    if (entry->value == "true" || entry->value == "1" || entry->value == "yes")
      config.plot = true;
    else if (entry->value == "false" || entry->value == "0" || entry->value == "no")
      config.plot = false;
    else
      issue(entry->line, "plot", "expected true or false");
  }

  // base parameter domain (swept keys are overridden per grid point anyway)
  try {
    validate(config.base);
  } catch (const param_error& err) {
    issue(0, "", err.what());
  }

  if (result.issues.empty()) result.config = std::move(config);
  return result;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

} // namespace tristeer::io
