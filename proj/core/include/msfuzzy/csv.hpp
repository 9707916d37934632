#pragma once

#include <string>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

enum class Transform { none, pct_annualized_growth };

// 400 * ln(x_t / x_{t-1}) on positive levels; output drops the first
// observation (and its label).
TimeSeries pct_annualized_growth(const TimeSeries& levels);

// Plain comma-separated file: one header row, decimal-point reals, UTF-8,
// no quoted separators. The value column is located by header name; when it
// is not the leftmost column, the first column is kept as labels (dates).
// An empty value_column picks the column right after the leading date
// column (or the only column of a single-column file).
TimeSeries load_csv(const std::string& path, const std::string& value_column,
                    Transform transform = Transform::none);

} // namespace msfuzzy
