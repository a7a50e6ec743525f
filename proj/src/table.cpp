#include "tristeer/io/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tristeer::io {

namespace {

using nlohmann::json;

constexpr std::string_view unstable_sentinel = "unstable";

std::optional<SteeringRegime> regime_from_string(std::string_view name) {
  for (SteeringRegime regime :
       {SteeringRegime::no_way, SteeringRegime::one_way_forward,
        SteeringRegime::one_way_backward, SteeringRegime::two_way})
    if (name == to_string(regime)) return regime;
  return std::nullopt;
}

std::optional<ModePair> pair_from_string(std::string_view name) {
  for (ModePair pair : {ModePair::ab, ModePair::ac, ModePair::bc})
    if (name == to_string(pair)) return pair;
  return std::nullopt;
}

json row_to_json(const SweepRow& row) {
  json j;
  j["axis1"] = row.axis1;
  j["axis2"] = row.axis2 ? json(*row.axis2) : json(nullptr);
  j["stable"] = row.stable;
  j["pair"] = to_string(row.pair);
  const auto measure = [&](double value) {
    return std::isnan(value) ? json(nullptr) : json(value);
  };
  j["E_N"] = measure(row.e_n);
  j["G_fwd"] = measure(row.g_fwd);
  j["G_bwd"] = measure(row.g_bwd);
  j["regime"] = row.regime ? json(to_string(*row.regime)) : json(nullptr);
  j["n_first"] = measure(row.n_first);
  j["n_second"] = measure(row.n_second);
  j["abs_corr"] = measure(row.abs_corr);
  return j;
}

} // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw numerical_error("format_double: conversion failed");
  return {buffer, ptr};
}

std::optional<double> parse_double(std::string_view text) {
  if (text == "nan" || text == "-nan")
    return std::numeric_limits<double>::quiet_NaN();
  double value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << csv_header << "\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.axis1) << ',';
    if (row.axis2) out << format_double(*row.axis2);
    out << ',' << (row.stable ? '1' : '0') << ',' << to_string(row.pair) << ','
        << format_double(row.e_n) << ',' << format_double(row.g_fwd) << ','
        << format_double(row.g_bwd) << ','
        << (row.regime ? to_string(*row.regime) : unstable_sentinel) << ','
        << format_double(row.n_first) << ',' << format_double(row.n_second) << ','
        << format_double(row.abs_corr) << "\n";
  }
  return out.str();
}

SweepResult from_csv(std::string_view text) {
  SweepResult result;
  result.axis1_name = "axis1"; // the fixed header does not carry axis names
  size_t pos = 0;
  int line_no = 0;
  bool saw_axis2 = false;
  while (pos < text.size()) {
    const size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != csv_header)
        throw io_error("from_csv: unexpected header: " + std::string(line));
      continue;
    }
    std::vector<std::string_view> fields;
    size_t field_pos = 0;
    while (true) {
      const size_t comma = line.find(',', field_pos);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(field_pos));
        break;
      }
      fields.push_back(line.substr(field_pos, comma - field_pos));
      field_pos = comma + 1;
    }
    if (fields.size() != 11)
      throw io_error("from_csv: line " + std::to_string(line_no) + ": expected 11 fields");
    const auto number = [&](std::string_view field, const char* what) {
      const auto value = parse_double(field);
      if (!value)
        throw io_error("from_csv: line " + std::to_string(line_no) + ": bad " +
                       std::string(what) + " '" + std::string(field) + "'");
      return *value;
    };
    SweepRow row;
    row.axis1 = number(fields[0], "axis1");
    if (!fields[1].empty()) {
      row.axis2 = number(fields[1], "axis2");
      saw_axis2 = true;
    }
    row.stable = fields[2] == "1";
    const auto pair = pair_from_string(fields[3]);
    if (!pair)
      throw io_error("from_csv: line " + std::to_string(line_no) + ": bad pair");
    row.pair = *pair;
    row.e_n = number(fields[4], "E_N");
    row.g_fwd = number(fields[5], "G_fwd");
    row.g_bwd = number(fields[6], "G_bwd");
    if (fields[7] != unstable_sentinel) {
      const auto regime = regime_from_string(fields[7]);
      if (!regime)
        throw io_error("from_csv: line " + std::to_string(line_no) + ": bad regime");
      row.regime = regime;
    }
    row.n_first = number(fields[8], "n_first");
    row.n_second = number(fields[9], "n_second");
    row.abs_corr = number(fields[10], "abs_corr");
    result.rows.push_back(row);
  }
  if (saw_axis2) result.axis2_name = "axis2";
  return result;
}

std::string to_json(const SweepResult& result) {
  json j;
  j["axis1_name"] = result.axis1_name;
  j["axis2_name"] = result.axis2_name ? json(*result.axis2_name) : json(nullptr);
  json rows = json::array();
  for (const SweepRow& row : result.rows) rows.push_back(row_to_json(row));
  j["rows"] = std::move(rows);
  return j.dump(1);
}

SweepResult from_json(std::string_view text) {
  const json j = json::parse(text);
  SweepResult result;
  result.axis1_name = j.at("axis1_name").get<std::string>();
  if (!j.at("axis2_name").is_null())
    result.axis2_name = j.at("axis2_name").get<std::string>();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto measure = [&](const json& value) {
    return value.is_null() ? nan : value.get<double>();
  };
  for (const json& row_json : j.at("rows")) {
    SweepRow row;
    row.axis1 = row_json.at("axis1").get<double>();
    if (!row_json.at("axis2").is_null()) row.axis2 = row_json.at("axis2").get<double>();
    row.stable = row_json.at("stable").get<bool>();
    const auto pair = pair_from_string(row_json.at("pair").get<std::string>());
    if (!pair) throw io_error("from_json: bad pair label");
    row.pair = *pair;
    row.e_n = measure(row_json.at("E_N"));
    row.g_fwd = measure(row_json.at("G_fwd"));
    row.g_bwd = measure(row_json.at("G_bwd"));
    if (!row_json.at("regime").is_null()) {
      const auto regime = regime_from_string(row_json.at("regime").get<std::string>());
      if (!regime) throw io_error("from_json: bad regime label");
      row.regime = regime;
    }
    row.n_first = measure(row_json.at("n_first"));
    row.n_second = measure(row_json.at("n_second"));
    row.abs_corr = measure(row_json.at("abs_corr"));
    result.rows.push_back(row);
  }
  return result;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw io_error("write failed: " + path);
}

} // namespace tristeer::io
