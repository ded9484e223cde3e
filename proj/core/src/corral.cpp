#include "bslb/corral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bslb/lasso.hpp"
#include "bslb/policies.hpp"

namespace bslb {

std::vector<int> sparsity_grid(int d) {
  if (d < 1) throw std::invalid_argument("sparsity_grid: d must be positive");
  std::vector<int> grid;
  for (long k = 1; k <= d; k *= 2) grid.push_back(static_cast<int>(std::min<long>(k, d)));
  return grid;
}

double default_eta(int d, int T, double r_best_bound) {
  if (d < 1 || T < 1 || !(r_best_bound > 0.0))
    throw std::invalid_argument("default_eta: inputs must be positive");
  const double log_grid = std::floor(std::log2(static_cast<double>(d)));
  return std::min(1.0 / (40.0 * T * r_best_bound),
                  std::sqrt(log_grid / static_cast<double>(T)));
}

CorralState make_corral_state(int num_bases, double eta_init, int T) {
  if (num_bases < 1) throw std::invalid_argument("make_corral_state: need a base");
  if (T < 2) throw std::invalid_argument("make_corral_state: need T >= 2");
  if (!(eta_init > 0.0)) throw std::invalid_argument("make_corral_state: eta must be positive");
  CorralState s;
  s.probs.assign(num_bases, 1.0 / num_bases);
  s.rho.assign(num_bases, 2.0 * num_bases);
  s.eta.assign(num_bases, eta_init);
  s.gamma = 1.0 / T;
  s.beta_growth = std::exp(1.0 / std::log(static_cast<double>(T)));
  return s;
}

CorralState omd_update(const CorralState& state, int base_index,
                       double importance_weighted_loss) {
  const int B = state.num_bases();
  if (base_index < 0 || base_index >= B)
    throw std::invalid_argument("omd_update: base index out of range");
  if (!(importance_weighted_loss >= 0.0) || !std::isfinite(importance_weighted_loss))
    throw std::invalid_argument("omd_update: loss must be finite and nonnegative");

  std::vector<double> lhat(B, 0.0);
  lhat[base_index] = importance_weighted_loss;

  // sum_i 1/(1/p_i + eta_i (lhat_i - nu)) is increasing in nu; it is at most
  // 1 at nu = 0 and diverges at the smallest pole, so the root brackets.
  auto sum_at = [&](double nu) {
    double s = 0.0;
    for (int i = 0; i < B; ++i) s += 1.0 / (1.0 / state.probs[i] + state.eta[i] * (lhat[i] - nu));
    return s;
  };
  double nu_hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < B; ++i)
    nu_hi = std::min(nu_hi, lhat[i] + 1.0 / (state.eta[i] * state.probs[i]));
  double lo = 0.0, hi = nu_hi * (1.0 - 1e-15);
  if (sum_at(hi) < 1.0) throw std::runtime_error("omd_update: failed to bracket normalizer");
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (sum_at(mid) < 1.0 ? lo : hi) = mid;
  }
  const double nu = 0.5 * (lo + hi);

  CorralState next = state;
  next.round = state.round + 1;
  double total = 0.0;
  for (int i = 0; i < B; ++i) {
    next.probs[i] = 1.0 / (1.0 / state.probs[i] + state.eta[i] * (lhat[i] - nu));
    total += next.probs[i];
  }
  for (int i = 0; i < B; ++i) {
    next.probs[i] = (1.0 - next.gamma) * next.probs[i] / total + next.gamma / B;
    if (1.0 / next.probs[i] > next.rho[i]) {
      next.rho[i] = 2.0 / next.probs[i];
      next.eta[i] = next.beta_growth * next.eta[i];
    }
  }
  return next;
}

namespace {

// One explore-then-commit base driven by the meta-policy. It advances only
// on rounds where it is sampled and sees importance-weighted rewards.
class EtcBase {
 public:
  EtcBase(const ArmSet& arms, int explore_budget, BaseEstimator estimator,
          std::optional<double> lambda_override)
      : arms_(&arms),
        budget_(explore_budget),
        estimator_(estimator),
        lambda_override_(lambda_override),
        consumed_(arms.size(), false) {}

  int propose(const Environment& env, const std::vector<int>& proxy_pool, Rng& rng) {
    if (!committed_) {
      std::vector<int> candidates;
      for (int j : proxy_pool)
        if (!consumed_[j] && !env.pulled(j)) candidates.push_back(j);
      if (candidates.empty()) {
        for (int j = 0; j < arms_->size(); ++j)
          if (!consumed_[j] && !env.pulled(j)) candidates.push_back(j);
      }
      if (candidates.empty()) throw std::runtime_error("corral base: no arm to propose");
      return candidates[rng.integer(candidates.size())];
    }
    while (cursor_ < exploit_order_.size() && consumed_[exploit_order_[cursor_]]) ++cursor_;
    if (cursor_ >= exploit_order_.size())
      throw std::runtime_error("corral base: exploit list exhausted");
    return exploit_order_[cursor_];
  }

  void feed(int arm, double weighted_reward) {
    consumed_[arm] = true;
    if (committed_) return;
    explored_arms_.push_back(arm);
    explored_rewards_.push_back(weighted_reward);
    if (static_cast<int>(explored_arms_.size()) >= budget_) commit();
  }

 private:
  void commit() {
    const int n = static_cast<int>(explored_arms_.size());
    Eigen::MatrixXd x(n, arms_->dim());
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) {
      x.row(i) = arms_->matrix().row(explored_arms_[i]);
      r[i] = explored_rewards_[i];
    }
    Regression reg(std::move(x), std::move(r));
    const double lam = lambda_override_ ? *lambda_override_
                                        : default_lambda(n, std::max(arms_->dim(), 2));
    const Eigen::VectorXd theta_hat = estimator_ == BaseEstimator::lasso
                                          ? lasso_fit(reg, LassoConfig{lam, 10000, 1e-8})
                                          : ridge_fit(reg, lam);
    exploit_order_ = greedy_order(*arms_, theta_hat, consumed_);
    cursor_ = 0;
    committed_ = true;
  }

  const ArmSet* arms_;
  int budget_;
  BaseEstimator estimator_;
  std::optional<double> lambda_override_;
  std::vector<bool> consumed_;
  std::vector<int> explored_arms_;
  std::vector<double> explored_rewards_;
  std::vector<int> exploit_order_;
  std::size_t cursor_ = 0;
  bool committed_ = false;
};

int base_explore_budget(int k, int T, double r_max_hat, double exponent, double c) {
  const double raw = c * std::pow(r_max_hat, -2.0 / 3.0) *
                     std::pow(static_cast<double>(k), exponent) *
                     std::pow(static_cast<double>(T), 2.0 / 3.0);
  return static_cast<int>(std::clamp<long>(std::lround(raw), 1, T - 1));
}

}  // namespace

RunTrace run_cbslb(Environment& env, const CorralConfig& cfg, Rng& rng,
                   std::vector<std::vector<double>>* probs_log) {
  const ArmSet& arms = env.instance().arm_set;
  const int M = arms.size();
  const int d = arms.dim();
  const int T = cfg.horizon;
  if (env.round() != 0) throw std::invalid_argument("run_cbslb: environment already used");
  if (T < 2 || T > M) throw std::invalid_argument("run_cbslb: need 2 <= T <= M");
  if (!(cfg.reward_scale > 0.0))
    throw std::invalid_argument("run_cbslb: reward_scale must be positive");

  std::vector<int> grid = cfg.grid.empty() ? sparsity_grid(d) : cfg.grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || grid[i] > d || (i > 0 && grid[i] <= grid[i - 1]))
      throw std::invalid_argument("run_cbslb: grid must be strictly increasing within [1, d]");
  }
  const int B = static_cast<int>(grid.size());

  const double r_max_hat = arms.matrix().rowwise().norm().maxCoeff();
  std::vector<EtcBase> bases;
  bases.reserve(B);
  for (int k : grid)
    bases.emplace_back(arms,
                       base_explore_budget(k, T, std::max(r_max_hat, 1e-12),
                                           cfg.explore_exponent, cfg.c_explore),
                       cfg.base_estimator, cfg.lambda_override);

  const int pool_size = std::min<long>(
      M, std::max<long>(1, static_cast<long>(std::ceil(
             cfg.c_pool * std::cbrt(static_cast<double>(d)) *
             std::pow(static_cast<double>(T), 2.0 / 3.0)))));
  const std::vector<int> proxy_pool = rng.sample_without_replacement(M, pool_size);

  const double eta = cfg.eta_init > 0.0 ? cfg.eta_init : default_eta(d, T, cfg.r_best_bound);
  CorralState state = make_corral_state(B, eta, T);

  std::vector<double> recorded_reward(M, 0.0);
  std::vector<int> pulls;
  std::vector<double> rewards;
  pulls.reserve(T);
  rewards.reserve(T);

  for (int t = 0; t < T; ++t) {
    // Sample a base from the current distribution.
    int base = B - 1;
    {
      const double u = rng.uniform();
      double acc = 0.0;
      for (int i = 0; i < B; ++i) {
        acc += state.probs[i];
        if (u < acc) {
          base = i;
          break;
        }
      }
    }
    const double p = state.probs[base];

    const int proposal = bases[base].propose(env, proxy_pool, rng);
    double proposal_reward;
    if (!env.pulled(proposal)) {
      proposal_reward = env.pull(proposal);
      recorded_reward[proposal] = proposal_reward;
      pulls.push_back(proposal);
      rewards.push_back(proposal_reward);
    } else {
      // Replay the stored reward to the base and keep the trace moving with
      // a uniformly random unpulled arm.
      proposal_reward = recorded_reward[proposal];
      std::vector<int> unpulled;
      for (int j = 0; j < M; ++j)
        if (!env.pulled(j)) unpulled.push_back(j);
      const int fallback = unpulled[rng.integer(unpulled.size())];
      const double fr = env.pull(fallback);
      recorded_reward[fallback] = fr;
      pulls.push_back(fallback);
      rewards.push_back(fr);
    }

    bases[base].feed(proposal, proposal_reward / p);

    const double loss = std::clamp(
        (cfg.reward_scale - proposal_reward) / (2.0 * cfg.reward_scale), 0.0, 1.0);
    state = omd_update(state, base, loss / p);
    if (probs_log) probs_log->push_back(state.probs);
  }

  return make_trace(env.instance(), std::move(pulls), std::move(rewards));
}

}  // namespace bslb
