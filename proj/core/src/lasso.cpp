#include "bslb/lasso.hpp"

#include <cmath>
#include <stdexcept>

namespace bslb {

Regression::Regression(Eigen::MatrixXd x, Eigen::VectorXd obs)
    : X(std::move(x)), r(std::move(obs)) {
  if (X.rows() != r.size()) throw std::invalid_argument("Regression: row count mismatch");
  if (X.rows() < 1) throw std::invalid_argument("Regression: need at least one sample");
  if (!X.allFinite() || !r.allFinite())
    throw std::invalid_argument("Regression: non-finite entry");
  if (X.cwiseAbs().maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("Regression: |X_ij| must be <= 1");
}

double default_lambda(int n, int d) {
  if (n < 1 || d < 2) throw std::invalid_argument("default_lambda: need n >= 1, d >= 2");
  return std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(n));
}

double lasso_objective(const Regression& reg, double lambda, const Eigen::VectorXd& theta) {
  return (reg.r - reg.X * theta).squaredNorm() + lambda * theta.lpNorm<1>();
}

Eigen::VectorXd lasso_fit(const Regression& reg, const LassoConfig& cfg) {
  if (!(cfg.lambda >= 0.0) || !(cfg.tol > 0.0) || cfg.max_sweeps < 1)
    throw std::invalid_argument("lasso_fit: bad config");
  const int d = reg.d();
  const Eigen::MatrixXd gram = reg.X.transpose() * reg.X;  // d x d
  const Eigen::VectorXd xr = reg.X.transpose() * reg.r;
  const double half_lambda = 0.5 * cfg.lambda;

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd gram_theta = Eigen::VectorXd::Zero(d);  // gram * theta, kept incrementally

  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < d; ++j) {
      const double gjj = gram(j, j);
      double updated = 0.0;
      if (gjj > 0.0) {
        // Exact coordinate minimizer of the unnormalized objective.
        const double z = xr[j] - (gram_theta[j] - gjj * theta[j]);
        const double mag = std::abs(z) - half_lambda;
        updated = mag > 0.0 ? (z > 0.0 ? mag : -mag) / gjj : 0.0;
      }
      const double delta = updated - theta[j];
      if (delta != 0.0) {
        theta[j] = updated;
        gram_theta += delta * gram.col(j);
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change < cfg.tol) break;
  }
  return theta;
}

Eigen::VectorXd ridge_fit(const Regression& reg, double lambda2) {
  if (!(lambda2 >= 0.0)) throw std::invalid_argument("ridge_fit: lambda2 must be >= 0");
  const int d = reg.d();
  Eigen::MatrixXd gram = reg.X.transpose() * reg.X;
  gram.diagonal().array() += lambda2;
  // LDLT handles the rank-deficient lambda2 = 0 case as a least-squares
  // pseudo-solution only when regularized; fall back to a pivoted QR there.
  if (lambda2 > 0.0) return gram.ldlt().solve(reg.X.transpose() * reg.r);
  return reg.X.colPivHouseholderQr().solve(reg.r);
}

}  // namespace bslb
