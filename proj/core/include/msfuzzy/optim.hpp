#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace msfuzzy {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
  int max_iter = 500;
  double grad_tol = 1e-6; // infinity norm of the numerical gradient
  double armijo_c = 1e-4;
  double fd_scale = 1e-6; // gradient step h_i = fd_scale * (1 + |x_i|)
};

struct OptimResult {
  Eigen::VectorXd x;
  double fx = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0; // accepted steps
  bool converged = false;
  std::vector<double> f_trace; // objective after each accepted step
};

// Central-difference gradient, h_i = scale * (1 + |x_i|).
Eigen::VectorXd numerical_gradient(const ObjectiveFn& f,
                                   const Eigen::VectorXd& x,
                                   double scale = 1e-6);

// BFGS minimization with Armijo backtracking. The objective may return +inf
// to veto a region (the line search backtracks past it); accepted steps never
// increase f. Stops when the gradient drops below grad_tol, the iteration
// budget runs out, or no acceptable step length remains.
OptimResult minimize_bfgs(const ObjectiveFn& f, Eigen::VectorXd x0,
                          const BfgsOptions& options = BfgsOptions());

} // namespace msfuzzy
