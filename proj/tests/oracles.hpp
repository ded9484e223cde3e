#pragma once

// Test-only reference implementations. Everything here is deliberately
// separate from the library code paths it checks: naive loops, exhaustive
// enumeration, characteristic polynomials, subgradient descent.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "bslb/model.hpp"

namespace oracles {

// Triple-loop accumulation of sum_j w_j a_j a_j^T.
inline Eigen::MatrixXd naive_weighted_covariance(const bslb::ArmSet& arms,
                                                 const Eigen::VectorXd& w) {
  const int d = arms.dim();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < arms.size(); ++j)
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        s(p, q) += w[j] * arms.matrix()(j, p) * arms.matrix()(j, q);
  return s;
}

// Smallest eigenvalue through the characteristic polynomial: coefficients by
// Faddeev-LeVerrier, roots as eigenvalues of the companion matrix (general,
// non-symmetric QR path).
inline double charpoly_min_eigenvalue(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  // p(x) = x^n + c[n-1] x^{n-1} + ... + c[0]
  std::vector<double> c(n, 0.0);
  Eigen::MatrixXd mk = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = (m * mk).eval();
    const double ck = -mk.trace() / k;
    c[n - k] = ck;
    mk.diagonal().array() += ck;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i];
  const Eigen::EigenSolver<Eigen::MatrixXd> roots(companion);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) best = std::min(best, roots.eigenvalues()[i].real());
  return best;
}

// Sum of the t largest inner products, by explicit sort.
inline double sorted_top_t(const bslb::Instance& inst, int t) {
  std::vector<double> rewards;
  for (int j = 0; j < inst.num_arms(); ++j) rewards.push_back(inst.expected_reward(j));
  std::sort(rewards.begin(), rewards.end(), std::greater<double>());
  double sum = 0.0;
  for (int i = 0; i < t; ++i) sum += rewards[i];
  return sum;
}

// Subgradient descent on the lasso objective |r - X theta|^2 + lambda |theta|_1
// with the strongly-convex 2/(m (t+1)) schedule, tracking the best iterate.
inline Eigen::VectorXd subgradient_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& r,
                                         double lambda, int iters) {
  const int d = static_cast<int>(x.cols());
  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd xr = x.transpose() * r;
  const double strong = 2.0 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram)
                                  .eigenvalues()
                                  .minCoeff();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd best = theta;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= iters; ++t) {
    Eigen::VectorXd g = 2.0 * (gram * theta - xr);
    for (int j = 0; j < d; ++j)
      g[j] += lambda * (theta[j] > 0.0 ? 1.0 : (theta[j] < 0.0 ? -1.0 : 0.0));
    theta -= (2.0 / (strong * (t + 1))) * g;
    const double obj = (r - x * theta).squaredNorm() + lambda * theta.lpNorm<1>();
    if (obj < best_obj) {
      best_obj = obj;
      best = theta;
    }
  }
  return best;
}

// KKT residual of a capped-simplex projection: largest violation over
// feasibility, the sum constraint, and the clamp representation.
inline double capped_projection_kkt_residual(const Eigen::VectorXd& v,
                                             const Eigen::VectorXd& mu, double cap) {
  const int n = static_cast<int>(v.size());
  double residual = std::abs(mu.sum() - 1.0);
  double tau_lo = -std::numeric_limits<double>::infinity();
  double tau_hi = std::numeric_limits<double>::infinity();
  bool have_interior = false;
  double tau = 0.0;
  for (int i = 0; i < n; ++i) {
    residual = std::max(residual, std::max(-mu[i], mu[i] - cap));
    if (mu[i] > 1e-12 && mu[i] < cap - 1e-12) {
      tau = v[i] - mu[i];
      have_interior = true;
    } else if (mu[i] <= 1e-12) {
      tau_lo = std::max(tau_lo, v[i]);  // needs v_i - tau <= 0
    } else {
      tau_hi = std::min(tau_hi, v[i] - cap);  // needs v_i - tau >= cap
    }
  }
  if (!have_interior) tau = std::clamp(0.5 * (tau_lo + tau_hi), tau_lo, tau_hi);
  for (int i = 0; i < n; ++i)
    residual = std::max(residual, std::abs(mu[i] - std::clamp(v[i] - tau, 0.0, cap)));
  return residual;
}

// Coarse-to-fine grid minimization of |mu - v|^2 over the capped simplex in
// three dimensions (two free coordinates).
inline Eigen::VectorXd grid_qp_3d(const Eigen::VectorXd& v, double cap) {
  auto objective = [&v](double a, double b, double c) {
    return (a - v[0]) * (a - v[0]) + (b - v[1]) * (b - v[1]) + (c - v[2]) * (c - v[2]);
  };
  double best_a = 1.0 / 3.0, best_b = 1.0 / 3.0;
  double best_obj = std::numeric_limits<double>::infinity();
  auto scan = [&](double a_lo, double a_hi, double b_lo, double b_hi, double step) {
    for (double a = a_lo; a <= a_hi + 1e-15; a += step) {
      if (a < -1e-12 || a > cap + 1e-12) continue;
      for (double b = b_lo; b <= b_hi + 1e-15; b += step) {
        if (b < -1e-12 || b > cap + 1e-12) continue;
        const double c = 1.0 - a - b;
        if (c < -1e-9 || c > cap + 1e-9) continue;
        const double obj = objective(a, b, c);
        if (obj < best_obj) {
          best_obj = obj;
          best_a = a;
          best_b = b;
        }
      }
    }
  };
  scan(0.0, 1.0, 0.0, 1.0, 1e-2);
  for (double step : {1e-3, 1e-4, 1e-5}) {
    const double window = 20.0 * step;
    scan(best_a - window, best_a + window, best_b - window, best_b + window, step);
  }
  Eigen::VectorXd mu(3);
  mu << best_a, best_b, 1.0 - best_a - best_b;
  return mu;
}

// Exhaustive maximum of the normalized minimum eigenvalue over every
// nonempty subset (bitmask enumeration; M <= 20).
inline double best_subset_min_eigenvalue(const bslb::ArmSet& arms) {
  const int M = arms.size();
  const int d = arms.dim();
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << M); ++mask) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    int count = 0;
    for (int j = 0; j < M; ++j) {
      if (!(mask & (1u << j))) continue;
      const Eigen::VectorXd a = arms.arm(j);
      s += a * a.transpose();
      ++count;
    }
    s /= static_cast<double>(count);
    const double lam =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues().minCoeff();
    best = std::max(best, lam);
  }
  return best;
}

// Dense grid search for the capped-simplex relaxation objective in d = 2:
// enumerate compositions of `resolution` over the arms and keep the best
// minimum eigenvalue (closed form for 2 x 2 matrices).
inline double grid_relaxation_objective_2d(const bslb::ArmSet& arms, double cap,
                                           int resolution) {
  const int M = arms.size();
  std::vector<double> mu(M, 0.0);
  const int max_units = static_cast<int>(std::floor(cap * resolution + 1e-9));
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::Matrix2d> outer(M);
  for (int j = 0; j < M; ++j) {
    const Eigen::Vector2d a = arms.arm(j);
    outer[j] = a * a.transpose();
  }
  // recursive enumeration of mu in units of 1/resolution
  std::vector<int> units(M, 0);
  auto lambda_min2 = [](const Eigen::Matrix2d& s) {
    const double tr = s(0, 0) + s(1, 1);
    const double det_part = std::sqrt(std::max(
        0.0, (s(0, 0) - s(1, 1)) * (s(0, 0) - s(1, 1)) + 4.0 * s(0, 1) * s(0, 1)));
    return 0.5 * (tr - det_part);
  };
  std::function<void(int, int, Eigen::Matrix2d)> rec = [&](int j, int left,
                                                           Eigen::Matrix2d acc) {
    if (j == M - 1) {
      if (left > max_units) return;
      acc += (static_cast<double>(left) / resolution) * outer[j];
      best = std::max(best, lambda_min2(acc));
      return;
    }
    const int hi = std::min(left, max_units);
    for (int u = 0; u <= hi; ++u)
      rec(j + 1, left - u, acc + (static_cast<double>(u) / resolution) * outer[j]);
  };
  rec(0, resolution, Eigen::Matrix2d::Zero());
  return best;
}

}  // namespace oracles
