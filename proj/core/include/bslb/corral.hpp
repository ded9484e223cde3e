#pragma once

#include <optional>
#include <vector>

#include "bslb/bandit.hpp"
#include "bslb/design.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace bslb {

// Log-barrier mirror-descent state over the base policies.
struct CorralState {
  std::vector<double> probs;
  std::vector<double> rho;   // reciprocal-probability caps
  std::vector<double> eta;   // per-base learning rates
  double gamma = 0.0;        // uniform mixing weight, 1/T
  double beta_growth = 1.0;  // learning-rate growth on a cap doubling
  int round = 0;

  int num_bases() const { return static_cast<int>(probs.size()); }
};

CorralState make_corral_state(int num_bases, double eta_init, int T);

// One mirror-descent step for an importance-weighted loss on one base:
// solve for nu with 1/p'_i = 1/p_i + eta_i (lhat_i - nu) and sum p' = 1,
// mix toward uniform by gamma, then apply the cap-doubling rule.
CorralState omd_update(const CorralState& state, int base_index,
                       double importance_weighted_loss);

enum class BaseEstimator { lasso, ridge };

struct CorralConfig {
  std::vector<int> grid;  // empty: sparsity_grid(d)
  int horizon = 0;        // T
  double eta_init = 0.0;  // 0: default_eta(d, T, r_best_bound)
  double r_best_bound = 1.0;
  double reward_scale = 1.0;          // reward r maps to loss (scale - r) / (2 scale)
  double c_pool = 1.0;                // proxy pool size c * d^{1/3} T^{2/3}
  double c_explore = 1.0;             // base exploration budget constant
  double explore_exponent = 2.0 / 3.0;  // exponent on k in the base budgets
  BaseEstimator base_estimator = BaseEstimator::lasso;
  std::optional<double> lambda_override;
};

// Exponential sparsity grid {1, 2, 4, ..., 2^floor(log2 d)}, clamped to d.
std::vector<int> sparsity_grid(int d);

// Learning rate min(1 / (40 T r_best_bound), sqrt(floor(log2 d) / T)).
double default_eta(int d, int T, double r_best_bound);

// Corralled explore-then-commit bases over the sparsity grid. Bases explore
// inside a shared proxy pool; a proposal that is already pulled is replayed
// to the base from the recorded reward while a uniformly random unpulled arm
// is pulled instead. probs_log, when given, receives the post-update
// distribution each round.
RunTrace run_cbslb(Environment& env, const CorralConfig& cfg, Rng& rng,
                   std::vector<std::vector<double>>* probs_log = nullptr);

}  // namespace bslb
