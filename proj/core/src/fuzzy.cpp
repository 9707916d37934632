#include "msfuzzy/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msfuzzy/errors.hpp"
#include "msfuzzy/rng.hpp"
#include "msfuzzy/stats.hpp"

namespace msfuzzy {

namespace {

struct RunOutcome {
  Eigen::MatrixXd u;
  std::vector<double> centroids;
  double objective = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// u_tj = (d2_min / d2_tj)^{1/(m-1)} normalized over j; dividing by the row
// minimum keeps every power in (0, 1]. A zero distance makes the row crisp
// at the first matching centroid.
void update_memberships(const std::vector<double>& y,
                        const std::vector<double>& c, double m,
                        Eigen::MatrixXd& u) {
  const int k = static_cast<int>(c.size());
  const double expo = 1.0 / (m - 1.0);
  const bool quadratic = m == 2.0;
  std::vector<double> d2(static_cast<std::size_t>(k));

  for (Eigen::Index t = 0; t < u.rows(); ++t) {
    const double yt = y[static_cast<std::size_t>(t)];
    int zero = -1;
    double mn = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      const double diff = yt - c[static_cast<std::size_t>(j)];
      d2[static_cast<std::size_t>(j)] = diff * diff;
      if (d2[static_cast<std::size_t>(j)] == 0.0 && zero < 0) zero = j;
      mn = std::min(mn, d2[static_cast<std::size_t>(j)]);
    }
    if (zero >= 0) {
      u.row(t).setZero();
      u(t, zero) = 1.0;
      continue;
    }
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      const double ratio = mn / d2[static_cast<std::size_t>(j)];
      const double w = quadratic ? ratio : std::pow(ratio, expo);
      u(t, j) = w;
      total += w;
    }
    u.row(t) /= total;
  }
}

double objective_value(const std::vector<double>& y,
                       const std::vector<double>& c, double m,
                       const Eigen::MatrixXd& u) {
  const int k = static_cast<int>(c.size());
  const bool quadratic = m == 2.0;
  double obj = 0.0;
  for (Eigen::Index t = 0; t < u.rows(); ++t) {
    const double yt = y[static_cast<std::size_t>(t)];
    for (int j = 0; j < k; ++j) {
      const double diff = yt - c[static_cast<std::size_t>(j)];
      const double w = quadratic ? u(t, j) * u(t, j) : std::pow(u(t, j), m);
      obj += w * diff * diff;
    }
  }
  return obj;
}

RunOutcome run_once(const std::vector<double>& y, std::vector<double> c,
                    double m, const FuzzyConfig& cfg) {
  const Eigen::Index T = static_cast<Eigen::Index>(y.size());
  const int k = static_cast<int>(c.size());
  const bool quadratic = m == 2.0;

  RunOutcome out;
  out.u.resize(T, k);
  update_memberships(y, c, m, out.u);

  Eigen::MatrixXd next = out.u;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    // centroid step: c_j = sum u^m y / sum u^m; an emptied cluster keeps
    // its previous centroid
    for (int j = 0; j < k; ++j) {
      double num = 0.0, den = 0.0;
      for (Eigen::Index t = 0; t < T; ++t) {
        const double w =
            quadratic ? out.u(t, j) * out.u(t, j) : std::pow(out.u(t, j), m);
        num += w * y[static_cast<std::size_t>(t)];
        den += w;
      }
      if (den > 0.0) c[static_cast<std::size_t>(j)] = num / den;
    }

    update_memberships(y, c, m, next);
    const double delta = (next - out.u).cwiseAbs().maxCoeff();
    out.u.swap(next);

    out.iterations = it;
    out.trace.push_back(objective_value(y, c, m, out.u));
    if (delta < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.objective = out.trace.empty() ? objective_value(y, c, m, out.u)
                                    : out.trace.back();
  out.centroids = std::move(c);
  return out;
}

} // namespace

FuzzyResult fuzzy_kmeans(const TimeSeries& y, int k, double m,
                         const FuzzyConfig& config) {
  if (k < 1) throw std::invalid_argument("fuzzy_kmeans: k must be >= 1");
  if (!(m > 1.0)) throw std::invalid_argument("fuzzy_kmeans: m must be > 1");
  const std::size_t T = y.size();
  if (T < static_cast<std::size_t>(k)) {
    throw InsufficientData("fuzzy_kmeans: need at least k observations");
  }

  const auto& values = y.values();
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());

  if (*mn_it == *mx_it && k > 1) {
    // Identical observations: no partition is better than any other.
    Eigen::MatrixXd u = Eigen::MatrixXd::Constant(
        static_cast<Eigen::Index>(T), k, 1.0 / static_cast<double>(k));
    return FuzzyResult{MembershipMatrix(u),
                       std::vector<double>(static_cast<std::size_t>(k), *mn_it),
                       0.0,
                       0,
                       false,
                       {}};
  }

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(variance_ml(values));

  RunOutcome best;
  bool have_best = false;
  for (int s = 0; s < std::max(config.n_starts, 1); ++s) {
    Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(s));
    std::vector<double> c(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      const double q = static_cast<double>(j + 1) / static_cast<double>(k + 1);
      double cj = quantile_sorted(sorted, q);
      if (s > 0) cj += (rng.uniform() - 0.5) * sd;
      c[static_cast<std::size_t>(j)] = cj;
    }
    RunOutcome run = run_once(values, std::move(c), m, config);
    if (!have_best || run.objective < best.objective) {
      best = std::move(run);
      have_best = true;
    }
  }

  // Canonical labels: descending centroids.
  const std::vector<int> perm = canonical_state_order(best.centroids);
  std::vector<double> centroids(static_cast<std::size_t>(k));
  Eigen::MatrixXd u(static_cast<Eigen::Index>(T), k);
  for (int j = 0; j < k; ++j) {
    centroids[static_cast<std::size_t>(j)] =
        best.centroids[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    u.col(j) = best.u.col(perm[static_cast<std::size_t>(j)]);
  }

  return FuzzyResult{MembershipMatrix(std::move(u)),
                     std::move(centroids),
                     best.objective,
                     best.iterations,
                     best.converged,
                     std::move(best.trace)};
}

} // namespace msfuzzy
