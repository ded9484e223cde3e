#include "bslb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bslb {

WeightedCovariance weighted_covariance(const ArmSet& arms, const Eigen::VectorXd& weights) {
  if (weights.size() != arms.size())
    throw std::invalid_argument("weighted_covariance: weight length mismatch");
  if (!weights.allFinite() || (weights.array() < 0.0).any())
    throw std::invalid_argument("weighted_covariance: weights must be finite and nonnegative");
  const Eigen::MatrixXd& a = arms.matrix();
  Eigen::MatrixXd s = a.transpose() * weights.asDiagonal() * a;
  s = 0.5 * (s + s.transpose()).eval();
  return WeightedCovariance{std::move(s), weights.sum()};
}

EigPair min_eigpair(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("min_eigpair: matrix not square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("min_eigpair: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("min_eigpair: eigensolver failed");
  // Eigen returns eigenvalues in increasing order.
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  v /= v.norm();
  return EigPair{solver.eigenvalues()[0], std::move(v)};
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double cap) {
  const int M = static_cast<int>(v.size());
  if (M < 1) throw std::invalid_argument("project_capped_simplex: empty input");
  if (!(cap > 0.0)) throw std::invalid_argument("project_capped_simplex: cap must be positive");
  if (!v.allFinite()) throw std::invalid_argument("project_capped_simplex: non-finite input");
  if (static_cast<double>(M) * cap < 1.0 - 1e-12)
    throw std::invalid_argument("project_capped_simplex: infeasible cap");

  auto build = [&](double tau) {
    Eigen::VectorXd mu(M);
    for (int i = 0; i < M; ++i) mu[i] = std::clamp(v[i] - tau, 0.0, cap);
    return mu;
  };

  // mu_i(tau) = clamp(v_i - tau, 0, cap); f(tau) = sum_i mu_i(tau) is
  // continuous, piecewise linear and nonincreasing. Sweep the breakpoints
  // from above and solve f(tau) = 1 on the segment where it crosses.
  struct Event {
    double tau;
    double vi;
    bool to_capped;  // false: coordinate turns active at tau = v_i
  };
  std::vector<Event> events;
  events.reserve(2 * static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    events.push_back({v[i], v[i], false});
    events.push_back({v[i] - cap, v[i], true});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.tau > b.tau; });

  double n_active = 0.0, sum_active = 0.0, n_capped = 0.0;
  double seg_hi = std::numeric_limits<double>::infinity();
  std::size_t p = 0;
  while (p < events.size()) {
    const double seg_lo = events[p].tau;
    const double f_lo = n_capped * cap + sum_active - n_active * seg_lo;
    if (f_lo >= 1.0) {
      double tau = seg_lo;
      if (n_active > 0.0) {
        tau = (sum_active + n_capped * cap - 1.0) / n_active;
        tau = std::clamp(tau, seg_lo, seg_hi);
      }
      return build(tau);
    }
    while (p < events.size() && events[p].tau == seg_lo) {
      if (events[p].to_capped) {
        n_active -= 1.0;
        sum_active -= events[p].vi;
        n_capped += 1.0;
      } else {
        n_active += 1.0;
        sum_active += events[p].vi;
      }
      ++p;
    }
    seg_hi = seg_lo;
  }
  // Below every breakpoint all coordinates sit at the cap; only reachable
  // when M * cap == 1 up to round-off.
  if (n_capped * cap >= 1.0 - 1e-9) return build(events.back().tau);
  throw std::logic_error("project_capped_simplex: threshold search failed");
}

}  // namespace bslb
