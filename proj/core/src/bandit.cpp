#include "bslb/bandit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bslb {

namespace {

std::vector<double> top_prefix_sums(const Instance& inst) {
  Eigen::VectorXd r = inst.expected_rewards();
  std::vector<int> idx(inst.num_arms());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&r](int a, int b) { return r[a] > r[b]; });
  std::vector<double> prefix(static_cast<std::size_t>(inst.num_arms()) + 1, 0.0);
  for (std::size_t t = 0; t < idx.size(); ++t) prefix[t + 1] = prefix[t] + r[idx[t]];
  return prefix;
}

}  // namespace

Environment::Environment(const Instance& instance, std::uint64_t noise_seed)
    : instance_(&instance),
      pulled_(instance.num_arms(), false),
      rng_(noise_seed),
      top_prefix_(top_prefix_sums(instance)) {}

double Environment::pull(int arm_index) {
  if (arm_index < 0 || arm_index >= num_arms())
    throw std::out_of_range("Environment::pull: arm index out of range");
  if (round_ >= num_arms()) throw std::runtime_error("Environment::pull: arms exhausted");
  if (pulled_[arm_index]) throw std::runtime_error("Environment::pull: blocking violation");
  pulled_[arm_index] = true;
  order_.push_back(arm_index);
  ++round_;
  const double mean = instance_->expected_reward(arm_index);
  const double noise = instance_->noise_sigma > 0.0
                           ? instance_->noise_sigma * rng_.normal()
                           : 0.0;
  return mean + noise;
}

double Environment::top_t(int t) const {
  if (t < 1 || t > num_arms()) throw std::invalid_argument("Environment::top_t: t out of range");
  return top_prefix_[t];
}

std::vector<double> regret_trace(const Instance& instance, const std::vector<int>& arm_indices) {
  if (arm_indices.size() > static_cast<std::size_t>(instance.num_arms()))
    throw std::invalid_argument("regret_trace: more pulls than arms");
  std::vector<bool> seen(instance.num_arms(), false);
  for (int j : arm_indices) {
    if (j < 0 || j >= instance.num_arms())
      throw std::invalid_argument("regret_trace: arm index out of range");
    if (seen[j]) throw std::invalid_argument("regret_trace: duplicate arm index");
    seen[j] = true;
  }
  const auto prefix = top_prefix_sums(instance);
  std::vector<double> regret(arm_indices.size());
  double collected = 0.0;
  for (std::size_t t = 0; t < arm_indices.size(); ++t) {
    collected += instance.expected_reward(arm_indices[t]);
    regret[t] = prefix[t + 1] - collected;
  }
  return regret;
}

RunTrace make_trace(const Instance& instance, std::vector<int> arm_indices,
                    std::vector<double> rewards) {
  if (arm_indices.size() != rewards.size())
    throw std::invalid_argument("make_trace: length mismatch");
  RunTrace trace;
  trace.cum_regret = regret_trace(instance, arm_indices);
  trace.expected_rewards.reserve(arm_indices.size());
  for (int j : arm_indices) trace.expected_rewards.push_back(instance.expected_reward(j));
  trace.arm_indices = std::move(arm_indices);
  trace.rewards = std::move(rewards);
  return trace;
}

}  // namespace bslb
