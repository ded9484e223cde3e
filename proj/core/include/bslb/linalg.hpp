#pragma once

#include <Eigen/Dense>
#include <utility>

#include "bslb/model.hpp"

namespace bslb {

// Weighted second-moment matrix of an arm set: sum_j w_j a_j a_j^T,
// symmetrized after accumulation.
struct WeightedCovariance {
  Eigen::MatrixXd matrix;
  double weight_sum = 0.0;
};

WeightedCovariance weighted_covariance(const ArmSet& arms, const Eigen::VectorXd& weights);

struct EigPair {
  double value;
  Eigen::VectorXd vector;  // unit l2 norm
};

// Smallest eigenpair of a symmetric matrix. Throws if the input is not
// symmetric to 1e-9 (absolute).
EigPair min_eigpair(const Eigen::MatrixXd& m);

// Euclidean projection onto { mu : sum mu = 1, 0 <= mu_i <= cap }.
// Exact sorted-threshold search over the clamp parameter. Throws
// "infeasible cap" when M * cap < 1.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double cap);

}  // namespace bslb
