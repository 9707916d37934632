#include "msfuzzy/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace msfuzzy {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance_ml(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

double quantile_sorted(const std::vector<double>& sorted_values, double p) {
  if (sorted_values.empty()) {
    throw std::invalid_argument("quantile_sorted: empty sample");
  }
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("quantile_sorted: p outside [0,1]");
  }
  const std::size_t n = sorted_values.size();
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted_values[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

} // namespace msfuzzy
