#include "msfuzzy/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "msfuzzy/errors.hpp"

namespace msfuzzy {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  std::string out = s.substr(a, b - a);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_value(const std::string& field, std::size_t row,
                   const std::string& column) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column +
                     "': cannot parse '" + field + "' as a number");
  }
  return value;
}

} // namespace

TimeSeries pct_annualized_growth(const TimeSeries& levels) {
  if (levels.size() < 2) {
    throw EmptySeries("growth transform needs at least two observations");
  }
  std::vector<double> growth(levels.size() - 1);
  for (std::size_t t = 1; t < levels.size(); ++t) {
    if (!(levels[t - 1] > 0.0) || !(levels[t] > 0.0)) {
      throw ParseError("growth transform: non-positive level at position " +
                       std::to_string(t + 1));
    }
    growth[t - 1] = 400.0 * std::log(levels[t] / levels[t - 1]);
  }
  if (!levels.has_labels()) return TimeSeries(std::move(growth));
  std::vector<std::string> labels(levels.labels().begin() + 1,
                                  levels.labels().end());
  return TimeSeries(std::move(growth), std::move(labels));
}

TimeSeries load_csv(const std::string& path, const std::string& value_column,
                    Transform transform) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw EmptySeries("file has no header: " + path);
  const std::vector<std::string> header = split_fields(line);

  std::size_t value_idx = header.size();
  if (value_column.empty()) {
    value_idx = header.size() > 1 ? 1 : 0;
  }
  for (std::size_t i = 0; i < header.size() && value_idx == header.size(); ++i) {
    if (header[i] == value_column) value_idx = i;
  }
  if (value_idx >= header.size()) {
    std::string names;
    for (std::size_t i = 0; i < header.size(); ++i) {
      names += (i ? ", " : "") + header[i];
    }
    throw ParseError("column '" + value_column + "' not in header (" + names +
                     ")");
  }
  const bool keep_labels = value_idx != 0;

  std::vector<double> values;
  std::vector<std::string> labels;
  std::size_t row = 1; // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    values.push_back(parse_value(fields[value_idx], row, value_column));
    if (keep_labels) labels.push_back(fields[0]);
  }
  if (values.empty()) throw EmptySeries("no data rows in " + path);

  TimeSeries series = keep_labels
                          ? TimeSeries(std::move(values), std::move(labels))
                          : TimeSeries(std::move(values));
  return transform == Transform::pct_annualized_growth
             ? pct_annualized_growth(series)
             : series;
}

} // namespace msfuzzy
