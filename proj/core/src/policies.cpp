#include "bslb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bslb {

int explore_budget(int k, int T, double r_max_hat, double lambda_hat, double c_explore) {
  if (k < 1 || T < 2) throw std::invalid_argument("explore_budget: need k >= 1, T >= 2");
  if (!(r_max_hat > 0.0) || !(lambda_hat > 0.0) || !(c_explore > 0.0))
    throw std::invalid_argument("explore_budget: scale inputs must be positive");
  const double raw = c_explore * std::pow(r_max_hat, -2.0 / 3.0) *
                     std::pow(lambda_hat, -2.0 / 3.0) *
                     std::pow(static_cast<double>(k), 2.0 / 3.0) *
                     std::pow(static_cast<double>(T), 2.0 / 3.0);
  const long rounded = std::lround(raw);
  return static_cast<int>(std::clamp<long>(rounded, 1, T - 1));
}

std::vector<int> greedy_order(const ArmSet& arms, const Eigen::VectorXd& theta_hat,
                              const std::vector<bool>& excluded) {
  const Eigen::VectorXd scores = arms.matrix() * theta_hat;
  std::vector<int> order;
  order.reserve(arms.size());
  for (int j = 0; j < arms.size(); ++j)
    if (!excluded[j]) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

namespace {

enum class Estimator { lasso, ridge };

void validate_config(const Environment& env, const BslbConfig& cfg) {
  const int M = env.num_arms();
  const int d = env.instance().dim();
  if (env.round() != 0) throw std::invalid_argument("policy: environment already used");
  if (cfg.horizon < 2 || cfg.horizon > M)
    throw std::invalid_argument("policy: need 2 <= T <= M");
  if (cfg.sparsity_k < 1 || cfg.sparsity_k > d)
    throw std::invalid_argument("policy: sparsity_k out of range");
  if (cfg.explore_budget_override && *cfg.explore_budget_override > cfg.horizon)
    throw std::invalid_argument("policy: exploration budget exceeds horizon");
}

double default_r_max_hat(const ArmSet& arms) {
  return arms.matrix().rowwise().norm().maxCoeff();
}

int resolve_budget(const BslbConfig& cfg, const ArmSet& arms, double lambda_hat) {
  if (cfg.explore_budget_override)
    return std::clamp(*cfg.explore_budget_override, 1, cfg.horizon - 1);
  const double r = cfg.r_max_hat ? *cfg.r_max_hat : default_r_max_hat(arms);
  return explore_budget(cfg.sparsity_k, cfg.horizon, std::max(r, 1e-12),
                        std::max(lambda_hat, 1e-12), cfg.c_explore);
}

Eigen::VectorXd fit_estimate(const ArmSet& arms, const std::vector<int>& pulls,
                             const std::vector<double>& rewards, const BslbConfig& cfg,
                             Estimator estimator) {
  const int n = static_cast<int>(pulls.size());
  Eigen::MatrixXd x(n, arms.dim());
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    x.row(i) = arms.matrix().row(pulls[i]);
    r[i] = rewards[i];
  }
  Regression reg(std::move(x), std::move(r));
  const double lam = cfg.lambda_override ? *cfg.lambda_override
                                         : default_lambda(n, std::max(arms.dim(), 2));
  if (estimator == Estimator::lasso) return lasso_fit(reg, LassoConfig{lam, 10000, 1e-8});
  return ridge_fit(reg, lam);
}

// Shared exploit phase: greedy argmax over the unpulled arms each round,
// ties to the lower index.
void exploit(Environment& env, const Eigen::VectorXd& theta_hat, int rounds,
             std::vector<int>& pulls, std::vector<double>& rewards) {
  const ArmSet& arms = env.instance().arm_set;
  const Eigen::VectorXd scores = arms.matrix() * theta_hat;
  for (int t = 0; t < rounds; ++t) {
    int best = -1;
    for (int j = 0; j < arms.size(); ++j) {
      if (env.pulled(j)) continue;
      if (best < 0 || scores[j] > scores[best]) best = j;
    }
    if (best < 0) throw std::runtime_error("exploit: no arm left");
    rewards.push_back(env.pull(best));
    pulls.push_back(best);
  }
}

RunTrace run_etc(Environment& env, const BslbConfig& cfg, Rng& rng, Estimator estimator,
                 Design* design_out) {
  validate_config(env, cfg);
  const ArmSet& arms = env.instance().arm_set;
  const int M = arms.size();
  if (cfg.u_hat < 1 || cfg.u_hat > M)
    throw std::invalid_argument("policy: u_hat must be in [1, M]");

  GoodSubsetOptions opt;
  opt.rounding_repeats = cfg.rounding_repeats;
  opt.enable_search = cfg.enable_search;
  opt.relaxation = cfg.relaxation;
  if (cfg.shared_relaxation && cfg.shared_relaxation->u_hat != cfg.u_hat)
    throw std::invalid_argument("policy: shared relaxation was solved at a different u_hat");
  Design design = cfg.shared_relaxation
                      ? get_good_subset(arms, *cfg.shared_relaxation, opt, rng)
                      : get_good_subset(arms, cfg.u_hat, opt, rng);

  const int budget = resolve_budget(cfg, arms, design.lambda_hat);

  std::vector<int> pulls;
  std::vector<double> rewards;
  pulls.reserve(cfg.horizon);
  rewards.reserve(cfg.horizon);
  bool overflow = false;

  std::vector<int> pool = design.subset;
  for (int t = 0; t < budget; ++t) {
    int arm;
    if (!pool.empty()) {
      const auto pick = rng.integer(pool.size());
      arm = pool[pick];
      pool[pick] = pool.back();
      pool.pop_back();
    } else {
      // Budget larger than the design; keep exploring uniformly.
      overflow = true;
      std::vector<int> unpulled;
      for (int j = 0; j < M; ++j)
        if (!env.pulled(j)) unpulled.push_back(j);
      arm = unpulled[rng.integer(unpulled.size())];
    }
    rewards.push_back(env.pull(arm));
    pulls.push_back(arm);
  }

  const Eigen::VectorXd theta_hat = fit_estimate(arms, pulls, rewards, cfg, estimator);
  exploit(env, theta_hat, cfg.horizon - budget, pulls, rewards);

  if (design_out) *design_out = std::move(design);
  RunTrace trace = make_trace(env.instance(), std::move(pulls), std::move(rewards));
  trace.exploration_overflow = overflow;
  return trace;
}

}  // namespace

RunTrace run_bslb(Environment& env, const BslbConfig& cfg, Rng& rng, Design* design_out) {
  return run_etc(env, cfg, rng, Estimator::lasso, design_out);
}

RunTrace run_ridge_etc(Environment& env, const BslbConfig& cfg, Rng& rng, Design* design_out) {
  return run_etc(env, cfg, rng, Estimator::ridge, design_out);
}

RunTrace run_random(Environment& env, int T, Rng& rng) {
  const int M = env.num_arms();
  if (env.round() != 0) throw std::invalid_argument("run_random: environment already used");
  if (T < 1 || T > M) throw std::invalid_argument("run_random: need 1 <= T <= M");
  std::vector<int> pulls = rng.sample_without_replacement(M, T);
  std::vector<double> rewards;
  rewards.reserve(T);
  for (int arm : pulls) rewards.push_back(env.pull(arm));
  return make_trace(env.instance(), std::move(pulls), std::move(rewards));
}

RunTrace run_estc_rejection(Environment& env, const BslbConfig& cfg, Rng& rng) {
  validate_config(env, cfg);
  const ArmSet& arms = env.instance().arm_set;
  const int M = arms.size();

  // Uncapped relaxation (u_hat = 1 makes the cap vacuous).
  RelaxationSolution sol;
  if (cfg.shared_relaxation && cfg.shared_relaxation->u_hat == 1) {
    sol = *cfg.shared_relaxation;
  } else {
    sol = solve_relaxation(arms, 1, cfg.relaxation);
  }

  const int budget = resolve_budget(cfg, arms, std::max(sol.objective, 1e-12));

  std::vector<int> pulls;
  std::vector<double> rewards;
  pulls.reserve(cfg.horizon);
  rewards.reserve(cfg.horizon);

  for (int t = 0; t < budget; ++t) {
    // Sampling from mu conditioned on the unpulled arms is the limit of the
    // resample-on-rejection loop; when no mass is left it degrades to
    // uniform, which is the failure mode this baseline exhibits.
    double mass = 0.0;
    for (int j = 0; j < M; ++j)
      if (!env.pulled(j)) mass += sol.mu[j];
    int arm = -1;
    if (mass > 1e-300) {
      const double target = rng.uniform() * mass;
      double acc = 0.0;
      for (int j = 0; j < M; ++j) {
        if (env.pulled(j)) continue;
        acc += sol.mu[j];
        arm = j;
        if (acc >= target) break;
      }
    } else {
      std::vector<int> unpulled;
      for (int j = 0; j < M; ++j)
        if (!env.pulled(j)) unpulled.push_back(j);
      arm = unpulled[rng.integer(unpulled.size())];
    }
    rewards.push_back(env.pull(arm));
    pulls.push_back(arm);
  }

  const Eigen::VectorXd theta_hat =
      fit_estimate(arms, pulls, rewards, cfg, Estimator::lasso);
  exploit(env, theta_hat, cfg.horizon - budget, pulls, rewards);
  return make_trace(env.instance(), std::move(pulls), std::move(rewards));
}

}  // namespace bslb
