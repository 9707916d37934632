#include "msfuzzy/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "msfuzzy/errors.hpp"
#include "msfuzzy/filter.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/markov.hpp"
#include "msfuzzy/optim.hpp"
#include "msfuzzy/rng.hpp"
#include "msfuzzy/stats.hpp"

namespace msfuzzy {

namespace {

constexpr double kLogitClamp = 15.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_logit(double v) {
  if (std::isnan(v)) return 0.0;
  return std::clamp(v, -kLogitClamp, kLogitClamp);
}

} // namespace

EstimationConfig EstimationConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("config file " + path + ": root must be a JSON object");
  }

  EstimationConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    try {
      if (key == "n_restarts") cfg.n_restarts = it->get<int>();
      else if (key == "max_iter") cfg.max_iter = it->get<int>();
      else if (key == "grad_tol") cfg.grad_tol = it->get<double>();
      else if (key == "jitter_scale") cfg.jitter_scale = it->get<double>();
      else if (key == "seed") cfg.seed = it->get<std::uint64_t>();
      else if (key == "compute_std_errors")
        cfg.compute_std_errors = it->get<bool>();
      else
        throw ParseError("config file " + path + ": unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("config key '" + key + "': " + e.what());
    }
  }
  return cfg;
}

ParamTransform::ParamTransform(int k, int p) : k_(k), p_(p) {
  if (k < 1) throw std::invalid_argument("ParamTransform: k must be >= 1");
  if (p < 0 || p > 1) {
    throw UnsupportedOrder("ParamTransform: AR order must be 0 or 1");
  }
}

Eigen::VectorXd ParamTransform::to_vector(const MSModelSpec& spec) const {
  if (spec.states() != k_ || spec.ar_order() != p_) {
    throw std::invalid_argument("ParamTransform: spec shape mismatch");
  }
  Eigen::VectorXd theta(dim());
  int pos = 0;
  for (int j = 0; j < k_; ++j) {
    theta(pos++) = spec.means()[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < p_; ++i) {
    const double phi =
        std::clamp(spec.ar_coeffs()[static_cast<std::size_t>(i)],
                   -1.0 + 1e-12, 1.0 - 1e-12);
    theta(pos++) = std::atanh(phi);
  }
  theta(pos++) = std::log(spec.sigma());
  for (int i = 0; i < k_; ++i) {
    const double ref = spec.transition()(i, k_ - 1);
    for (int j = 0; j + 1 < k_; ++j) {
      theta(pos++) = clamp_logit(std::log(spec.transition()(i, j) / ref));
    }
  }
  return theta;
}

MSModelSpec ParamTransform::to_spec(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim()) {
    throw std::invalid_argument("ParamTransform: wrong vector length");
  }
  int pos = 0;
  std::vector<double> means(static_cast<std::size_t>(k_));
  for (int j = 0; j < k_; ++j) means[static_cast<std::size_t>(j)] = theta(pos++);
  std::vector<double> ar(static_cast<std::size_t>(p_));
  for (int i = 0; i < p_; ++i) {
    ar[static_cast<std::size_t>(i)] = std::tanh(theta(pos++));
  }
  const double sigma = std::exp(theta(pos++));

  Eigen::MatrixXd probs(k_, k_);
  for (int i = 0; i < k_; ++i) {
    double denom = 1.0;
    for (int j = 0; j + 1 < k_; ++j) {
      denom += std::exp(clamp_logit(theta(pos + j)));
    }
    for (int j = 0; j + 1 < k_; ++j) {
      probs(i, j) = std::exp(clamp_logit(theta(pos + j))) / denom;
    }
    probs(i, k_ - 1) = 1.0 / denom;
    pos += k_ - 1;
  }
  return MSModelSpec(std::move(means), std::move(ar), sigma,
                     TransitionMatrix(std::move(probs)));
}

Eigen::VectorXd ParamTransform::natural(const Eigen::VectorXd& theta) const {
  const MSModelSpec spec = to_spec(theta);
  Eigen::VectorXd nat(dim());
  int pos = 0;
  for (int j = 0; j < k_; ++j) {
    nat(pos++) = spec.means()[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < p_; ++i) {
    nat(pos++) = spec.ar_coeffs()[static_cast<std::size_t>(i)];
  }
  nat(pos++) = spec.sigma();
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j + 1 < k_; ++j) nat(pos++) = spec.transition()(i, j);
  }
  return nat;
}

std::vector<std::string> ParamTransform::natural_names() const {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(dim()));
  for (int j = 1; j <= k_; ++j) names.push_back("mu" + std::to_string(j));
  for (int i = 1; i <= p_; ++i) names.push_back("phi" + std::to_string(i));
  names.push_back("sigma");
  for (int i = 1; i <= k_; ++i) {
    for (int j = 1; j < k_; ++j) {
      names.push_back("p" + std::to_string(i) + std::to_string(j));
    }
  }
  return names;
}

namespace {

// Negated filter log-likelihood; +inf marks parameter regions the optimizer
// must back away from (underflow, non-finite values).
double neg_loglik(const TimeSeries& y, const ParamTransform& tf,
                  const Eigen::VectorXd& theta) {
  try {
    const double ll = hamilton_filter(y, tf.to_spec(theta)).loglik;
    return std::isfinite(ll) ? -ll : kInf;
  } catch (const Error&) {
    return kInf;
  } catch (const std::invalid_argument&) {
    return kInf;
  }
}

struct BaseInit {
  std::vector<double> centroids;
  double sigma0 = 1.0;
  Eigen::MatrixXd trans0;
  double phi0 = 0.0;
};

BaseInit initial_guess(const TimeSeries& y, int k, int p) {
  const FuzzyResult fz = fuzzy_kmeans(y, k, 2.0);
  const StatePath hard = hard_assign(fz.membership);
  const std::size_t T = y.size();

  BaseInit init;
  init.centroids = fz.centroids;

  double wss = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    for (int j = 0; j < k; ++j) {
      const double d = y[t] - fz.centroids[static_cast<std::size_t>(j)];
      wss += fz.membership(t, j) * d * d;
    }
  }
  const double sd = std::sqrt(variance_ml(y.values()));
  init.sigma0 = std::sqrt(wss / static_cast<double>(T));
  if (!(init.sigma0 > 1e-8 * (1.0 + std::abs(y[0])))) {
    init.sigma0 = std::max(0.1 * sd, 1e-6);
  }

  // empirical transitions of the hard assignment, +1 smoothing keeps every
  // entry interior
  Eigen::MatrixXd counts = Eigen::MatrixXd::Ones(k, k);
  for (std::size_t t = 1; t < T; ++t) {
    counts(hard[t - 1] - 1, hard[t] - 1) += 1.0;
  }
  init.trans0 = counts.array().colwise() / counts.rowwise().sum().array();

  if (p == 1) {
    double num = 0.0, den = 0.0;
    double prev = y[0] - fz.centroids[static_cast<std::size_t>(hard[0] - 1)];
    for (std::size_t t = 1; t < T; ++t) {
      const double e = y[t] - fz.centroids[static_cast<std::size_t>(hard[t] - 1)];
      num += e * prev;
      den += prev * prev;
      prev = e;
    }
    init.phi0 = den > 0.0 ? std::clamp(num / den, -0.9, 0.9) : 0.0;
  }
  return init;
}

MSEstimate finalize(const TimeSeries& y, const MSModelSpec& raw_spec,
                    bool converged, int n_restarts,
                    const EstimationConfig& config) {
  const std::vector<int> perm = canonical_state_order(raw_spec.means());
  const MSModelSpec spec = permute_states(raw_spec, perm);

  const FilterOutput fwd = hamilton_filter(y, spec);
  ProbabilityPaths paths = kim_smoother(fwd, spec.transition());

  const int k = spec.states();
  const int p = spec.ar_order();
  const int n_params = k + p + 1 + k * (k - 1);
  const auto [aic, bic] = information_criteria(fwd.loglik, n_params, y.size());

  std::optional<std::vector<double>> se;
  if (config.compute_std_errors && converged) {
    try {
      se = robust_std_errors(y, spec);
    } catch (const NumericalError&) {
      // estimate stands on its own; standard errors stay unset
    }
  }

  return MSEstimate{spec,      fwd.loglik, aic,       bic,
                    std::move(paths), std::move(se), converged, n_restarts};
}

} // namespace

MSEstimate fit_ms(const TimeSeries& y, int k, int p,
                  const EstimationConfig& config) {
  if (k < 1 || k > 4) throw std::invalid_argument("fit_ms: k must be in 1..4");
  if (p < 0 || p > 1) throw UnsupportedOrder("fit_ms: AR order must be 0 or 1");
  if (config.n_restarts < 1 || config.max_iter < 1 || !(config.grad_tol > 0)) {
    throw std::invalid_argument("fit_ms: invalid estimation config");
  }
  const std::size_t T = y.size();
  if (T < static_cast<std::size_t>(10 * k)) {
    throw InsufficientData("fit_ms: need at least 10k observations, got " +
                           std::to_string(T));
  }

  const double sd = std::sqrt(variance_ml(y.values()));
  if (!(sd > 0.0)) {
    throw DegenerateLikelihood("fit_ms: constant series has no MLE");
  }

  if (k == 1 && p == 0) {
    // exact: sample mean and ML standard deviation
    const MSModelSpec spec({mean(y.values())}, {}, sd,
                           TransitionMatrix(Eigen::MatrixXd::Ones(1, 1)));
    return finalize(y, spec, true, 0, config);
  }

  const ParamTransform tf(k, p);
  const BaseInit base = initial_guess(y, k, p);

  BfgsOptions options;
  options.max_iter = config.max_iter;
  options.grad_tol = config.grad_tol;
  const ObjectiveFn objective = [&](const Eigen::VectorXd& theta) {
    return neg_loglik(y, tf, theta);
  };

  Eigen::VectorXd best_x;
  double best_f = kInf;
  bool best_converged = false;
  for (int r = 0; r < config.n_restarts; ++r) {
    Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(r));
    std::vector<double> means = base.centroids;
    if (r > 0) {
      for (double& mu : means) mu += rng.normal(0.0, config.jitter_scale * sd);
    }
    std::vector<double> ar;
    if (p == 1) ar.push_back(base.phi0);
    const MSModelSpec start(std::move(means), std::move(ar), base.sigma0,
                            TransitionMatrix(base.trans0));

    const OptimResult res = minimize_bfgs(objective, tf.to_vector(start), options);
    if (res.fx < best_f) {
      best_f = res.fx;
      best_x = res.x;
      best_converged = res.converged;
    }
  }

  if (!std::isfinite(best_f)) {
    throw DegenerateLikelihood("fit_ms: no restart found a finite likelihood");
  }
  return finalize(y, tf.to_spec(best_x), best_converged, config.n_restarts,
                  config);
}

std::pair<double, double> information_criteria(double loglik, int n_params,
                                               std::size_t T) {
  if (T < 1) throw std::invalid_argument("information_criteria: T must be >= 1");
  const double Td = static_cast<double>(T);
  const double n = static_cast<double>(n_params);
  return {(-2.0 * loglik + 2.0 * n) / Td,
          (-2.0 * loglik + n * std::log(Td)) / Td};
}

std::vector<double> robust_std_errors(const TimeSeries& y,
                                      const MSModelSpec& spec) {
  const ParamTransform tf(spec.states(), spec.ar_order());
  const Eigen::VectorXd theta = tf.to_vector(spec);
  const int n = tf.dim();
  const Eigen::Index T = static_cast<Eigen::Index>(y.size());

  const auto loglik_at = [&](const Eigen::VectorXd& x) {
    return hamilton_filter(y, tf.to_spec(x)).loglik;
  };
  const auto steps_at = [&](const Eigen::VectorXd& x) {
    return hamilton_filter(y, tf.to_spec(x)).step_loglik;
  };

  const auto fd_step = [&](int i) { return 1e-5 * (1.0 + std::abs(theta(i))); };
  // Second differences divide by h^2, so at 1e-5 the ~1e-13 rounding noise of
  // a full log-likelihood evaluation would swamp the last five digits of the
  // Hessian; the wider step trades a little truncation bias for that noise.
  const auto fd_step_hess = [&](int i) {
    return 5e-4 * (1.0 + std::abs(theta(i)));
  };

  // score matrix: per-observation central differences
  Eigen::MatrixXd scores(T, n);
  {
    Eigen::VectorXd probe = theta;
    for (int i = 0; i < n; ++i) {
      const double h = fd_step(i);
      probe(i) = theta(i) + h;
      const std::vector<double> up = steps_at(probe);
      probe(i) = theta(i) - h;
      const std::vector<double> dn = steps_at(probe);
      probe(i) = theta(i);
      for (Eigen::Index t = 0; t < T; ++t) {
        scores(t, i) = (up[static_cast<std::size_t>(t)] -
                        dn[static_cast<std::size_t>(t)]) /
                       (2.0 * h);
      }
    }
  }
  const Eigen::MatrixXd outer = scores.transpose() * scores;

  // Hessian of the total log-likelihood, central differences
  Eigen::MatrixXd hessian(n, n);
  const double f0 = loglik_at(theta);
  {
    Eigen::VectorXd probe = theta;
    for (int i = 0; i < n; ++i) {
      const double hi = fd_step_hess(i);
      probe(i) = theta(i) + hi;
      const double fp = loglik_at(probe);
      probe(i) = theta(i) - hi;
      const double fm = loglik_at(probe);
      probe(i) = theta(i);
      hessian(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
      for (int j = i + 1; j < n; ++j) {
        const double hj = fd_step_hess(j);
        probe(i) = theta(i) + hi;
        probe(j) = theta(j) + hj;
        const double fpp = loglik_at(probe);
        probe(j) = theta(j) - hj;
        const double fpm = loglik_at(probe);
        probe(i) = theta(i) - hi;
        const double fmm = loglik_at(probe);
        probe(j) = theta(j) + hj;
        const double fmp = loglik_at(probe);
        probe(i) = theta(i);
        probe(j) = theta(j);
        hessian(i, j) = hessian(j, i) =
            (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
      }
    }
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(hessian);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (!(smin > 0.0) || smax / smin > 1e12) {
    throw SingularHessian("robust_std_errors: Hessian condition beyond 1e12");
  }

  const Eigen::MatrixXd hess_inv = hessian.fullPivLu().inverse();
  const Eigen::MatrixXd cov_theta = hess_inv * outer * hess_inv;

  // delta method onto the natural scale
  Eigen::MatrixXd jac(n, n);
  {
    Eigen::VectorXd probe = theta;
    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(theta(i)));
      probe(i) = theta(i) + h;
      const Eigen::VectorXd up = tf.natural(probe);
      probe(i) = theta(i) - h;
      const Eigen::VectorXd dn = tf.natural(probe);
      probe(i) = theta(i);
      jac.col(i) = (up - dn) / (2.0 * h);
    }
  }
  const Eigen::MatrixXd cov_nat = jac * cov_theta * jac.transpose();

  std::vector<double> se(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    se[static_cast<std::size_t>(i)] = std::sqrt(std::max(cov_nat(i, i), 0.0));
  }
  return se;
}

} // namespace msfuzzy
