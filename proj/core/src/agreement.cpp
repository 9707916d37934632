#include "msfuzzy/agreement.hpp"

#include <algorithm>

#include "msfuzzy/errors.hpp"
#include "msfuzzy/stats.hpp"

namespace msfuzzy {

ContingencyTable ContingencyTable::from_paths(const StatePath& a,
                                              const StatePath& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("contingency table: partition lengths differ");
  }
  ContingencyTable table;
  table.counts = Eigen::MatrixXi::Zero(a.num_states(), b.num_states());
  for (std::size_t t = 0; t < a.size(); ++t) {
    table.counts(a[t] - 1, b[t] - 1) += 1;
  }
  return table;
}

double rand_index(const StatePath& a, const StatePath& b) {
  if (a.size() < 2) {
    throw std::invalid_argument("rand_index: need at least two observations");
  }
  const ContingencyTable table = ContingencyTable::from_paths(a, b);
  const auto& n = table.counts;

  const double T = static_cast<double>(a.size());
  const double pairs = T * (T - 1.0) / 2.0;

  double row_sq = 0.0, col_sq = 0.0, cell_sq = 0.0;
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    const double r = static_cast<double>(n.row(i).sum());
    row_sq += r * r;
  }
  for (Eigen::Index j = 0; j < n.cols(); ++j) {
    const double c = static_cast<double>(n.col(j).sum());
    col_sq += c * c;
  }
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    for (Eigen::Index j = 0; j < n.cols(); ++j) {
      const double v = static_cast<double>(n(i, j));
      cell_sq += v * v;
    }
  }
  return (pairs - 0.5 * (row_sq + col_sq) + cell_sq) / pairs;
}

FiveNumberSummary rand_summary(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("rand_summary: empty sample");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  return FiveNumberSummary{sorted.front(), quantile_sorted(sorted, 0.25),
                           quantile_sorted(sorted, 0.5),
                           quantile_sorted(sorted, 0.75), sorted.back()};
}

TimeSeries moving_average(const TimeSeries& y, int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("moving_average: window must be odd and >= 1");
  }
  if (static_cast<std::size_t>(window) > y.size()) {
    throw WindowTooLarge("moving_average: window exceeds series length");
  }

  const std::size_t T = y.size();
  const std::size_t w = static_cast<std::size_t>(window);
  const std::size_t out_len = T - w + 1;

  std::vector<double> values(out_len);
  double acc = 0.0;
  for (std::size_t t = 0; t < w; ++t) acc += y[t];
  values[0] = acc / static_cast<double>(w);
  for (std::size_t t = 1; t < out_len; ++t) {
    acc += y[t + w - 1] - y[t - 1];
    values[t] = acc / static_cast<double>(w);
  }

  if (!y.has_labels()) return TimeSeries(std::move(values));
  const std::size_t half = w / 2;
  std::vector<std::string> labels(
      y.labels().begin() + static_cast<std::ptrdiff_t>(half),
      y.labels().begin() + static_cast<std::ptrdiff_t>(half + out_len));
  return TimeSeries(std::move(values), std::move(labels));
}

} // namespace msfuzzy
