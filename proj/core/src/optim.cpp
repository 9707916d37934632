#include "msfuzzy/optim.hpp"

#include <cmath>
#include <limits>

namespace msfuzzy {

Eigen::VectorXd numerical_gradient(const ObjectiveFn& f,
                                   const Eigen::VectorXd& x, double scale) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n);
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = scale * (1.0 + std::abs(x(i)));
    probe(i) = x(i) + h;
    const double fp = f(probe);
    probe(i) = x(i) - h;
    const double fm = f(probe);
    probe(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

OptimResult minimize_bfgs(const ObjectiveFn& f, Eigen::VectorXd x0,
                          const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  OptimResult res;
  res.x = std::move(x0);
  res.fx = f(res.x);
  res.f_trace.push_back(res.fx);
  if (!std::isfinite(res.fx)) return res; // hopeless starting point

  res.gradient = numerical_gradient(f, res.x, options.fd_scale);
  Eigen::MatrixXd inv_hessian = identity;

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    if (!res.gradient.allFinite()) break;
    if (res.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd direction = -inv_hessian * res.gradient;
    double slope = res.gradient.dot(direction);
    if (!(slope < 0.0)) {
      // curvature information went bad; restart from steepest descent
      inv_hessian = identity;
      direction = -res.gradient;
      slope = -res.gradient.squaredNorm();
      if (slope == 0.0) break;
    }

    // Armijo backtracking
    double step = 1.0;
    double fn = std::numeric_limits<double>::infinity();
    Eigen::VectorXd xn;
    bool accepted = false;
    while (step >= 1e-14) {
      xn = res.x + step * direction;
      fn = f(xn);
      if (std::isfinite(fn) && fn <= res.fx + options.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break; // no admissible step left

    Eigen::VectorXd gn = numerical_gradient(f, xn, options.fd_scale);
    const Eigen::VectorXd s = xn - res.x;
    const Eigen::VectorXd yv = gn - res.gradient;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const double rho = 1.0 / sy;
      inv_hessian = (identity - rho * s * yv.transpose()) * inv_hessian *
                        (identity - rho * yv * s.transpose()) +
                    rho * s * s.transpose();
    }

    res.x = std::move(xn);
    res.fx = fn;
    res.gradient = std::move(gn);
    res.iterations = iter;
    res.f_trace.push_back(res.fx);
  }

  if (res.gradient.size() == n && res.gradient.allFinite() &&
      res.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol) {
    res.converged = true;
  }
  return res;
}

} // namespace msfuzzy
