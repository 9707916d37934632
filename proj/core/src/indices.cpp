#include "msfuzzy/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "msfuzzy/errors.hpp"
#include "msfuzzy/format.hpp"
#include "msfuzzy/rng.hpp"
#include "msfuzzy/stats.hpp"

namespace msfuzzy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-observation silhouettes under squared-Euclidean distance. On scalars
// the mean squared distance from x to a cluster reduces to
// (n x^2 - 2 x S1 + S2) / n, so one pass over cluster sufficient statistics
// replaces the O(T^2) pairwise scan.
std::vector<double> silhouettes(const std::vector<double>& y,
                                const StatePath& partition) {
  const std::size_t T = y.size();
  const int k = partition.num_states();
  std::vector<double> count(static_cast<std::size_t>(k), 0.0);
  std::vector<double> s1(static_cast<std::size_t>(k), 0.0);
  std::vector<double> s2(static_cast<std::size_t>(k), 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const auto j = static_cast<std::size_t>(partition[t] - 1);
    count[j] += 1.0;
    s1[j] += y[t];
    s2[j] += y[t] * y[t];
  }
  int non_empty = 0;
  for (int j = 0; j < k; ++j)
    if (count[static_cast<std::size_t>(j)] > 0.0) ++non_empty;
  if (non_empty < 2) {
    throw SingleClusterPartition(
        "silhouette needs at least two non-empty clusters");
  }

  std::vector<double> s(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const auto own = static_cast<std::size_t>(partition[t] - 1);
    if (count[own] <= 1.0) continue; // singleton contributes 0

    const double x = y[t];
    const double a =
        (count[own] * x * x - 2.0 * x * s1[own] + s2[own]) / (count[own] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
      if (j == own || count[j] == 0.0) continue;
      b = std::min(b, (count[j] * x * x - 2.0 * x * s1[j] + s2[j]) / count[j]);
    }
    const double denom = std::max(a, b);
    s[t] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return s;
}

} // namespace

double pc(const MembershipMatrix& u) {
  const auto& w = u.weights();
  return w.array().square().sum() / static_cast<double>(w.rows());
}

double pe(const MembershipMatrix& u) {
  const auto& w = u.weights();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < w.rows(); ++t) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const double v = w(t, j);
      if (v > 0.0) acc -= v * std::log(v);
    }
  }
  return acc / static_cast<double>(w.rows());
}

double mpc(const MembershipMatrix& u) {
  const int k = u.states();
  if (k < 2) throw UndefinedForSingleCluster("mpc needs k >= 2");
  const double kk = static_cast<double>(k);
  return 1.0 - kk / (kk - 1.0) * (1.0 - pc(u));
}

double asw(const TimeSeries& y, const StatePath& partition) {
  if (y.size() != partition.size()) {
    throw LengthMismatch("asw: series and partition lengths differ");
  }
  const std::vector<double> s = silhouettes(y.values(), partition);
  return mean(s);
}

double aswf(const TimeSeries& y, const MembershipMatrix& u, double lambda) {
  if (y.size() != u.length()) {
    throw LengthMismatch("aswf: series and membership lengths differ");
  }
  if (lambda < 0.0) throw std::invalid_argument("aswf: lambda must be >= 0");

  // weights come first: a fully tied membership must fail as such, not as a
  // degenerate hard partition
  const auto& w = u.weights();
  const int k = u.states();
  std::vector<double> weights(u.length());
  double den = 0.0;
  for (Eigen::Index t = 0; t < w.rows(); ++t) {
    double first = -1.0, second = -1.0;
    for (int j = 0; j < k; ++j) {
      const double v = w(t, j);
      if (v > first) {
        second = first;
        first = v;
      } else if (v > second) {
        second = v;
      }
    }
    // pow(0, 0) = 1, so lambda = 0 gives unit weights even on exact ties
    weights[static_cast<std::size_t>(t)] = std::pow(first - second, lambda);
    den += weights[static_cast<std::size_t>(t)];
  }
  if (den == 0.0) throw AllWeightsZero("aswf: every membership row is tied");

  const StatePath hard = hard_assign(u);
  const std::vector<double> s = silhouettes(y.values(), hard);
  double num = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) num += weights[t] * s[t];
  return num / den;
}

double xb(const TimeSeries& y, const MembershipMatrix& u,
          const std::vector<double>& centroids) {
  const int k = static_cast<int>(centroids.size());
  if (k < 2) throw UndefinedForSingleCluster("xb needs k >= 2");
  if (u.states() != k || y.size() != u.length()) {
    throw LengthMismatch("xb: inconsistent dimensions");
  }

  double min_sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double d = centroids[static_cast<std::size_t>(i)] -
                       centroids[static_cast<std::size_t>(j)];
      min_sep = std::min(min_sep, d * d);
    }
  }
  if (min_sep < 1e-12) {
    throw CoincidentCentroids("xb: centroids closer than 1e-12");
  }

  const auto& w = u.weights();
  double num = 0.0;
  for (Eigen::Index t = 0; t < w.rows(); ++t) {
    for (int j = 0; j < k; ++j) {
      const double d = y[static_cast<std::size_t>(t)] -
                       centroids[static_cast<std::size_t>(j)];
      num += w(t, j) * w(t, j) * d * d;
    }
  }
  return num / (static_cast<double>(y.size()) * min_sep);
}

IndexReport select_k(const TimeSeries& y, int k_max, double m,
                     const FuzzyConfig& config, double lambda) {
  if (k_max < 2) throw std::invalid_argument("select_k: k_max must be >= 2");
  if (y.size() < static_cast<std::size_t>(k_max)) {
    throw InsufficientData("select_k: need at least k_max observations");
  }

  IndexReport report;
  for (int k = 2; k <= k_max; ++k) report.ks.push_back(k);
  report.values = Eigen::MatrixXd::Constant(
      static_cast<Eigen::Index>(report.ks.size()), 6, kNaN);
  report.selected_k.fill(0);
  report.best_value.fill(kNaN);

  for (std::size_t row = 0; row < report.ks.size(); ++row) {
    const int k = report.ks[row];
    FuzzyResult fr = fuzzy_kmeans(y, k, m, config);
    const auto eval = [&](int idx, auto&& fn) {
      try {
        report.values(static_cast<Eigen::Index>(row), idx) = fn();
      } catch (const Error&) {
        // leave NaN: this index is undefined at this k (e.g. a collapsed
        // hard partition); selection skips it
      }
    };
    eval(0, [&] { return pc(fr.membership); });
    eval(1, [&] { return pe(fr.membership); });
    eval(2, [&] { return mpc(fr.membership); });
    eval(3, [&] { return asw(y, hard_assign(fr.membership)); });
    eval(4, [&] { return aswf(y, fr.membership, lambda); });
    eval(5, [&] { return xb(y, fr.membership, fr.centroids); });
  }

  for (int idx = 0; idx < 6; ++idx) {
    const bool maximize = kIndexDirections[static_cast<std::size_t>(idx)] ==
                          IndexDirection::maximize;
    for (std::size_t row = 0; row < report.ks.size(); ++row) {
      const double v = report.values(static_cast<Eigen::Index>(row), idx);
      if (!std::isfinite(v)) continue;
      const double cur = report.best_value[static_cast<std::size_t>(idx)];
      if (!std::isfinite(cur) || (maximize ? v > cur : v < cur)) {
        report.best_value[static_cast<std::size_t>(idx)] = v;
        report.selected_k[static_cast<std::size_t>(idx)] = report.ks[row];
      }
    }
  }
  return report;
}

std::string index_report_csv(const IndexReport& report) {
  std::ostringstream out;
  out << "k";
  for (const char* name : kIndexNames) out << ',' << name;
  out << '\n';
  for (std::size_t row = 0; row < report.ks.size(); ++row) {
    out << report.ks[row];
    for (int idx = 0; idx < 6; ++idx) {
      out << ','
          << format_number(report.values(static_cast<Eigen::Index>(row), idx));
    }
    out << '\n';
  }
  out << "selected_k";
  for (int idx = 0; idx < 6; ++idx) {
    out << ',' << report.selected_k[static_cast<std::size_t>(idx)];
  }
  out << '\n';
  return out.str();
}

HomogeneityResult homogeneity_test(const TimeSeries& y,
                                   const IndexReport& observed, int n_sim,
                                   std::uint64_t seed, double m, double lambda,
                                   int jobs) {
  if (n_sim < 100) {
    throw std::invalid_argument("homogeneity_test: n_sim must be >= 100");
  }
  const double mu = mean(y.values());
  const double sd = std::sqrt(variance_ml(y.values()));
  const std::size_t T = y.size();

  // distinct cluster counts the observed selection actually used; each null
  // draw is clustered only at these
  std::vector<int> ks;
  for (int idx = 0; idx < 6; ++idx) {
    const int k = observed.selected_k[static_cast<std::size_t>(idx)];
    if (k >= 2 && std::find(ks.begin(), ks.end(), k) == ks.end()) {
      ks.push_back(k);
    }
  }
  std::sort(ks.begin(), ks.end());

  const auto simulate_range = [&](int lo, int hi, std::array<int, 6>& fav) {
    for (int sim = lo; sim < hi; ++sim) {
      Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(sim));
      std::vector<double> draw(T);
      for (std::size_t t = 0; t < T; ++t) draw[t] = rng.normal(mu, sd);
      const TimeSeries ys(std::move(draw));

      std::array<double, 6> value;
      value.fill(kNaN);
      for (const int k : ks) {
        try {
          const FuzzyResult fr = fuzzy_kmeans(ys, k, m);
          const auto eval = [&](int idx, auto&& fn) {
            if (observed.selected_k[static_cast<std::size_t>(idx)] != k) {
              return;
            }
            try {
              value[static_cast<std::size_t>(idx)] = fn();
            } catch (const Error&) {
              // index undefined on this draw; it simply doesn't count
            }
          };
          eval(0, [&] { return pc(fr.membership); });
          eval(1, [&] { return pe(fr.membership); });
          eval(2, [&] { return mpc(fr.membership); });
          eval(3, [&] { return asw(ys, hard_assign(fr.membership)); });
          eval(4, [&] { return aswf(ys, fr.membership, lambda); });
          eval(5, [&] { return xb(ys, fr.membership, fr.centroids); });
        } catch (const Error&) {
          // clustering itself failed at this k; the affected indices keep NaN
        }
      }

      for (int idx = 0; idx < 6; ++idx) {
        const double v = value[static_cast<std::size_t>(idx)];
        const double obs = observed.best_value[static_cast<std::size_t>(idx)];
        // only a failed null draw is skipped; an infinite observation still
        // compares the way the direction dictates
        if (!std::isfinite(v)) continue;
        const bool maximize = kIndexDirections[static_cast<std::size_t>(idx)] ==
                              IndexDirection::maximize;
        if (maximize ? v >= obs : v <= obs) {
          ++fav[static_cast<std::size_t>(idx)];
        }
      }
    }
  };

  std::array<int, 6> favorable{};
  const int workers = std::max(1, std::min(jobs, n_sim));
  if (workers == 1) {
    simulate_range(0, n_sim, favorable);
  } else {
    std::vector<std::array<int, 6>> partial(
        static_cast<std::size_t>(workers), std::array<int, 6>{});
    std::vector<std::thread> pool;
    for (int j = 0; j < workers; ++j) {
      const int lo = static_cast<int>(static_cast<long>(n_sim) * j / workers);
      const int hi =
          static_cast<int>(static_cast<long>(n_sim) * (j + 1) / workers);
      pool.emplace_back(simulate_range, lo, hi,
                        std::ref(partial[static_cast<std::size_t>(j)]));
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) {
      for (int idx = 0; idx < 6; ++idx) {
        favorable[static_cast<std::size_t>(idx)] +=
            p[static_cast<std::size_t>(idx)];
      }
    }
  }

  HomogeneityResult result;
  result.n_sim = n_sim;
  for (int idx = 0; idx < 6; ++idx) {
    result.p_values[static_cast<std::size_t>(idx)] =
        observed.selected_k[static_cast<std::size_t>(idx)] == 0
            ? kNaN
            : (favorable[static_cast<std::size_t>(idx)] + 1.0) / (n_sim + 1.0);
  }
  return result;
}

} // namespace msfuzzy
