#pragma once

#include <optional>
#include <vector>

#include "bslb/bandit.hpp"
#include "bslb/design.hpp"
#include "bslb/lasso.hpp"

namespace bslb {

struct BslbConfig {
  int sparsity_k = 1;
  int horizon = 0;  // T, at most the number of arms
  int u_hat = 0;
  std::optional<int> explore_budget_override;
  std::optional<double> lambda_override;
  int rounding_repeats = 10;
  bool enable_search = false;
  double c_explore = 1.0;
  std::optional<double> r_max_hat;  // default: max_j |a_j|_2
  RelaxationOptions relaxation;
  // Optional relaxation solution already computed for this arm set at u_hat;
  // lets a harness share the solver run across seeds.
  const RelaxationSolution* shared_relaxation = nullptr;
};

// Exploration budget round(c * r^{-2/3} lambda^{-2/3} k^{2/3} T^{2/3}),
// clamped to [1, T-1].
int explore_budget(int k, int T, double r_max_hat, double lambda_hat, double c_explore);

// Greedy exploitation order: arms not excluded, sorted by decreasing score,
// ties to the lower index. Invariant under positive rescaling of theta_hat.
std::vector<int> greedy_order(const ArmSet& arms, const Eigen::VectorXd& theta_hat,
                              const std::vector<bool>& excluded);

// Explore-then-commit with the subset-selection design and a Lasso estimate.
RunTrace run_bslb(Environment& env, const BslbConfig& cfg, Rng& rng,
                  Design* design_out = nullptr);

// Same schedule with a ridge estimate instead of the Lasso.
RunTrace run_ridge_etc(Environment& env, const BslbConfig& cfg, Rng& rng,
                       Design* design_out = nullptr);

// Uniform sampling without replacement over the unpulled arms.
RunTrace run_random(Environment& env, int T, Rng& rng);

// Naive blocking baseline: solves the relaxation without a cap and samples
// from that distribution conditioned on the unpulled arms; exploitation is
// identical to run_bslb.
RunTrace run_estc_rejection(Environment& env, const BslbConfig& cfg, Rng& rng);

}  // namespace bslb
