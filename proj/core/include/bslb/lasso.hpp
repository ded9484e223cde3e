#pragma once

#include <Eigen/Dense>

namespace bslb {

// Design matrix and observations for the exploration-phase regression.
// Entries of X must lie in [-1, 1].
struct Regression {
  Eigen::MatrixXd X;  // n x d, rows are pulled arms
  Eigen::VectorXd r;  // length n

  Regression(Eigen::MatrixXd x, Eigen::VectorXd obs);
  int n() const { return static_cast<int>(X.rows()); }
  int d() const { return static_cast<int>(X.cols()); }
};

struct LassoConfig {
  double lambda = 0.0;
  int max_sweeps = 10000;
  double tol = 1e-8;
};

// Regularization schedule sqrt(ln d / n).
double default_lambda(int n, int d);

// Minimizes sum_t (r_t - <theta, x_t>)^2 + lambda * |theta|_1 (unnormalized
// residual sum, so the coordinate soft threshold uses lambda / 2).
// Cyclic coordinate descent with cached X^T X updates; zero start.
Eigen::VectorXd lasso_fit(const Regression& reg, const LassoConfig& cfg);

// Objective value of the lasso program above.
double lasso_objective(const Regression& reg, double lambda, const Eigen::VectorXd& theta);

// Ridge counterpart used by the l2 baseline: minimizes
// sum_t (r_t - <theta, x_t>)^2 + lambda2 * |theta|_2^2.
Eigen::VectorXd ridge_fit(const Regression& reg, double lambda2);

}  // namespace bslb
