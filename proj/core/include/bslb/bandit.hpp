#pragma once

#include <vector>

#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace bslb {

// One policy run: pulled arms in order with realized and expected rewards,
// plus cumulative regret against the top-t benchmark. Regret may decrease
// between rounds; only the full-horizon value is guaranteed nonnegative in
// expectation.
struct RunTrace {
  std::vector<int> arm_indices;
  std::vector<double> rewards;
  std::vector<double> expected_rewards;
  std::vector<double> cum_regret;
  bool exploration_overflow = false;

  int length() const { return static_cast<int>(arm_indices.size()); }
};

// Simulated environment enforcing the blocking constraint: every arm can be
// pulled at most once. The generator is consumed only for reward noise, one
// draw per pull, so a fixed seed and pull sequence fix the reward stream.
class Environment {
 public:
  Environment(const Instance& instance, std::uint64_t noise_seed);

  const Instance& instance() const { return *instance_; }
  int num_arms() const { return instance_->num_arms(); }
  int round() const { return round_; }
  bool pulled(int arm_index) const { return pulled_.at(arm_index); }
  const std::vector<int>& pull_order() const { return order_; }

  // Reward <theta, a> + sigma * z. Throws on a repeated index or when all
  // arms are exhausted.
  double pull(int arm_index);

  // Benchmark value sum of the t largest expected rewards, cached per instance.
  double top_t(int t) const;

 private:
  const Instance* instance_;
  std::vector<bool> pulled_;
  std::vector<int> order_;
  int round_ = 0;
  Rng rng_;
  std::vector<double> top_prefix_;  // top_prefix_[t] = top_t value
};

// Cumulative regret per round for an ordered pull sequence; indices must be
// distinct. cum_regret[t-1] = top_t - sum of the first t expected rewards.
std::vector<double> regret_trace(const Instance& instance, const std::vector<int>& arm_indices);

// Assembles a RunTrace (expected rewards and regret) from pulls and rewards.
RunTrace make_trace(const Instance& instance, std::vector<int> arm_indices,
                    std::vector<double> rewards);

}  // namespace bslb
