#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bslb/rng.hpp"

namespace bslb {

// Finite arm set. Rows of the arm matrix are the arm feature vectors; every
// arm must lie in the unit ball for both the sup norm and the euclidean norm.
class ArmSet {
 public:
  // arms: M x d, one arm per row. Throws std::invalid_argument on violation.
  explicit ArmSet(Eigen::MatrixXd arms);

  int size() const { return static_cast<int>(arms_.rows()); }
  int dim() const { return static_cast<int>(arms_.cols()); }
  const Eigen::MatrixXd& matrix() const { return arms_; }
  Eigen::VectorXd arm(int j) const { return arms_.row(j).transpose(); }

 private:
  Eigen::MatrixXd arms_;
};

struct Parameter {
  Eigen::VectorXd theta;

  explicit Parameter(Eigen::VectorXd t);
  int dim() const { return static_cast<int>(theta.size()); }
};

struct Instance {
  ArmSet arm_set;
  Parameter theta;
  double noise_sigma = 0.0;

  Instance(ArmSet arms, Parameter param, double sigma);

  int num_arms() const { return arm_set.size(); }
  int dim() const { return arm_set.dim(); }
  double expected_reward(int j) const { return arm_set.matrix().row(j).dot(theta.theta); }
  Eigen::VectorXd expected_rewards() const { return arm_set.matrix() * theta.theta; }
};

// Relative tail mass at sparsity level k: l1 norm outside the top-k
// coordinates (by absolute value, ties to the lower index) divided by the l1
// norm of the top-k coordinates. Throws if the top-k l1 norm is zero.
double tail_ratio(const Parameter& theta, int k);

// Indices of the k largest-magnitude coordinates, ties to the lower index.
std::vector<int> top_k_support(const Eigen::VectorXd& v, int k);

// Parameter with k head coordinates (uniform magnitude in [0.5, 1], random
// sign, random support) and the remaining l1 mass spread evenly over the
// other coordinates so that tail_ratio(theta, k) == beta_target to 1e-9
// relative. Requires beta_target <= (d-k)/k so the head stays on top.
Parameter gen_sparse_theta(int d, int k, double beta_target, Rng& rng);

struct HardInstanceOptions {
  int sparsity = 0;      // 0: use the number of high-norm arms
  double sigma = 0.0;
};

// Arm matrix with M sphere-uniform rows of euclidean norm `norm`.
Eigen::MatrixXd gen_sphere_arms(int M, int d, double norm, Rng& rng);

// Arm matrix with l unit-norm rows and M-l rows of norm low_norm, all
// directions uniform on the sphere.
Eigen::MatrixXd gen_hard_arms(int M, int d, int l, double low_norm, Rng& rng);

// Unit-norm sparse parameter supported on the k coordinates where the first
// l (high-norm) arms carry the most energy, signed along their mean.
Parameter gen_hard_theta(const Eigen::MatrixXd& arms, int l, int k, Rng& rng);

// Instance with l unit-norm arms and M-l arms of euclidean norm low_norm.
Instance gen_hard_instance(int M, int d, int l, double low_norm, Rng& rng,
                           const HardInstanceOptions& opt = {});

// Instance with sphere-uniform unit-norm arms and a soft-sparse theta of
// unit euclidean norm (tail ratio beta at level k).
Instance gen_sim_instance(int M, int d, int k, double beta, double sigma, Rng& rng);

// Sum of the t largest expected rewards over distinct arms, ties by index.
double top_t_value(const Instance& inst, int t);

// JSON round trip for replay; floats survive exactly.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

}  // namespace bslb
