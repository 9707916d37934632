#pragma once

#include <span>
#include <vector>

namespace msfuzzy {

double mean(std::span<const double> xs);

// Maximum-likelihood variance (divisor T, not T-1).
double variance_ml(std::span<const double> xs);

// Linear-interpolation quantile (the common "type 7" rule) of an already
// sorted sample; p in [0, 1].
double quantile_sorted(const std::vector<double>& sorted_values, double p);

} // namespace msfuzzy
