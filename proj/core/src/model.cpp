#include "bslb/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bslb {

namespace {
constexpr double kNormSlack = 1e-9;
}

ArmSet::ArmSet(Eigen::MatrixXd arms) : arms_(std::move(arms)) {
  if (arms_.rows() < 1) throw std::invalid_argument("ArmSet: need at least one arm");
  if (arms_.cols() < 1) throw std::invalid_argument("ArmSet: dimension must be positive");
  if (!arms_.allFinite()) throw std::invalid_argument("ArmSet: non-finite entry");
  for (Eigen::Index j = 0; j < arms_.rows(); ++j) {
    if (arms_.row(j).lpNorm<Eigen::Infinity>() > 1.0 + kNormSlack)
      throw std::invalid_argument("ArmSet: arm sup norm exceeds 1");
    if (arms_.row(j).norm() > 1.0 + kNormSlack)
      throw std::invalid_argument("ArmSet: arm l2 norm exceeds 1");
  }
}

Parameter::Parameter(Eigen::VectorXd t) : theta(std::move(t)) {
  if (!theta.allFinite()) throw std::invalid_argument("Parameter: non-finite entry");
}

Instance::Instance(ArmSet arms, Parameter param, double sigma)
    : arm_set(std::move(arms)), theta(std::move(param)), noise_sigma(sigma) {
  if (theta.dim() != arm_set.dim())
    throw std::invalid_argument("Instance: theta dimension mismatch");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("Instance: sigma must be >= 0");
}

std::vector<int> top_k_support(const Eigen::VectorXd& v, int k) {
  const int d = static_cast<int>(v.size());
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&v](int a, int b) {
    return std::abs(v[a]) > std::abs(v[b]);
  });
  idx.resize(k);
  return idx;
}

double tail_ratio(const Parameter& theta, int k) {
  const int d = theta.dim();
  if (k < 1 || k > d) throw std::invalid_argument("tail_ratio: k out of range");
  const auto head = top_k_support(theta.theta, k);
  double head_l1 = 0.0;
  for (int i : head) head_l1 += std::abs(theta.theta[i]);
  if (head_l1 == 0.0) throw std::invalid_argument("tail_ratio: degenerate parameter");
  const double tail_l1 = theta.theta.lpNorm<1>() - head_l1;
  return tail_l1 / head_l1;
}

Parameter gen_sparse_theta(int d, int k, double beta_target, Rng& rng) {
  if (k < 1 || k > d) throw std::invalid_argument("gen_sparse_theta: k out of range");
  if (beta_target < 0.0) throw std::invalid_argument("gen_sparse_theta: beta must be >= 0");
  if (beta_target > 0.0 && k == d)
    throw std::invalid_argument("gen_sparse_theta: no tail coordinates");
  if (k < d && beta_target > static_cast<double>(d - k) / k)
    throw std::invalid_argument("gen_sparse_theta: tail ratio infeasible at this sparsity");

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  std::vector<int> support = rng.sample_without_replacement(d, d);  // head first, then tail

  double head_l1 = 0.0;
  double head_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const double mag = rng.uniform(0.5, 1.0);
    theta[support[i]] = rng.sign() * mag;
    head_l1 += mag;
    head_min = std::min(head_min, mag);
  }
  if (beta_target > 0.0) {
    // Even split keeps every tail entry strictly below the smallest head
    // entry whenever feasible; flatten the head if it is not.
    double tail_mag = beta_target * head_l1 / (d - k);
    if (tail_mag >= head_min) {
      for (int i = 0; i < k; ++i) theta[support[i]] = theta[support[i]] < 0 ? -1.0 : 1.0;
      head_l1 = static_cast<double>(k);
      head_min = 1.0;
      tail_mag = beta_target * head_l1 / (d - k);
    }
    if (tail_mag > head_min)
      throw std::invalid_argument("gen_sparse_theta: tail ratio infeasible at this sparsity");
    for (int i = k; i < d; ++i) theta[support[i]] = rng.sign() * tail_mag;
  }

  Parameter out(theta);
  const double achieved = tail_ratio(out, k);
  if (std::abs(achieved - beta_target) > 1e-9 * std::max(1.0, beta_target))
    throw std::logic_error("gen_sparse_theta: tail ratio missed target");
  return out;
}

namespace {

Eigen::VectorXd sphere_direction(int d, Rng& rng) {
  Eigen::VectorXd v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

// Guard against round-off pushing a norm past the unit-ball check.
Eigen::VectorXd shrink_to_ball(Eigen::VectorXd v) {
  const double linf = v.lpNorm<Eigen::Infinity>();
  if (linf > 1.0) v /= linf;
  const double l2 = v.norm();
  if (l2 > 1.0) v /= l2;
  return v;
}

}  // namespace

Eigen::MatrixXd gen_sphere_arms(int M, int d, double norm, Rng& rng) {
  if (M < 1) throw std::invalid_argument("gen_sphere_arms: M must be positive");
  if (!(norm > 0.0 && norm <= 1.0))
    throw std::invalid_argument("gen_sphere_arms: norm must be in (0, 1]");
  Eigen::MatrixXd arms(M, d);
  for (int j = 0; j < M; ++j)
    arms.row(j) = shrink_to_ball(norm * sphere_direction(d, rng)).transpose();
  return arms;
}

Eigen::MatrixXd gen_hard_arms(int M, int d, int l, double low_norm, Rng& rng) {
  if (l >= M || l < 1) throw std::invalid_argument("gen_hard_arms: need 1 <= l < M");
  if (!(low_norm > 0.0 && low_norm <= 1.0))
    throw std::invalid_argument("gen_hard_arms: low_norm must be in (0, 1]");
  Eigen::MatrixXd arms(M, d);
  for (int j = 0; j < l; ++j)
    arms.row(j) = shrink_to_ball(sphere_direction(d, rng)).transpose();
  for (int j = l; j < M; ++j)
    arms.row(j) = shrink_to_ball(low_norm * sphere_direction(d, rng)).transpose();
  return arms;
}

Parameter gen_hard_theta(const Eigen::MatrixXd& arms, int l, int k, Rng& rng) {
  const int d = static_cast<int>(arms.cols());
  if (l < 1 || l > arms.rows()) throw std::invalid_argument("gen_hard_theta: bad l");
  // Support theta where the high-norm arms carry energy, signs following
  // their mean direction, so the informative arms are also the rewarding ones.
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mean_dir = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < l; ++j) {
    energy += arms.row(j).cwiseAbs2().transpose();
    mean_dir += arms.row(j).transpose();
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  for (int i : top_k_support(energy, std::min(k, d))) {
    const double sgn = mean_dir[i] >= 0.0 ? 1.0 : -1.0;
    theta[i] = sgn * rng.uniform(0.5, 1.0);
  }
  theta /= theta.norm();
  return Parameter(std::move(theta));
}

Instance gen_hard_instance(int M, int d, int l, double low_norm, Rng& rng,
                           const HardInstanceOptions& opt) {
  Eigen::MatrixXd arms = gen_hard_arms(M, d, l, low_norm, rng);
  const int k = opt.sparsity > 0 ? opt.sparsity : l;
  Parameter theta = gen_hard_theta(arms, l, k, rng);
  return Instance(ArmSet(std::move(arms)), std::move(theta), opt.sigma);
}

Instance gen_sim_instance(int M, int d, int k, double beta, double sigma, Rng& rng) {
  Eigen::MatrixXd arms = gen_sphere_arms(M, d, 1.0, rng);
  Parameter theta = gen_sparse_theta(d, k, beta, rng);
  theta.theta /= theta.theta.norm();  // tail_ratio is scale invariant
  return Instance(ArmSet(std::move(arms)), std::move(theta), sigma);
}

double top_t_value(const Instance& inst, int t) {
  const int M = inst.num_arms();
  if (t < 1 || t > M) throw std::invalid_argument("top_t_value: t out of range");
  Eigen::VectorXd r = inst.expected_rewards();
  std::vector<int> idx(M);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&r](int a, int b) { return r[a] > r[b]; });
  double sum = 0.0;
  for (int i = 0; i < t; ++i) sum += r[idx[i]];
  return sum;
}

std::string instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["dim"] = inst.dim();
  auto arms = nlohmann::json::array();
  for (int r = 0; r < inst.num_arms(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < inst.dim(); ++c) row.push_back(inst.arm_set.matrix()(r, c));
    arms.push_back(std::move(row));
  }
  j["arms"] = std::move(arms);
  auto th = nlohmann::json::array();
  for (int c = 0; c < inst.dim(); ++c) th.push_back(inst.theta.theta[c]);
  j["theta"] = std::move(th);
  j["sigma"] = inst.noise_sigma;
  return j.dump();
}

Instance instance_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int d = j.at("dim").get<int>();
  const auto& arms_j = j.at("arms");
  Eigen::MatrixXd arms(arms_j.size(), d);
  for (std::size_t r = 0; r < arms_j.size(); ++r) {
    if (static_cast<int>(arms_j[r].size()) != d)
      throw std::invalid_argument("instance_from_json: ragged arms");
    for (int c = 0; c < d; ++c) arms(static_cast<Eigen::Index>(r), c) = arms_j[r][c].get<double>();
  }
  Eigen::VectorXd theta(d);
  const auto& th = j.at("theta");
  if (static_cast<int>(th.size()) != d)
    throw std::invalid_argument("instance_from_json: theta dimension mismatch");
  for (int c = 0; c < d; ++c) theta[c] = th[c].get<double>();
  return Instance(ArmSet(std::move(arms)), Parameter(std::move(theta)),
                  j.at("sigma").get<double>());
}

}  // namespace bslb
