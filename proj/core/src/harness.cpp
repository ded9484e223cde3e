#include "bslb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bslb/corral.hpp"
#include "bslb/design.hpp"
#include "bslb/policies.hpp"

namespace bslb {

namespace {

std::string join_fields(const std::vector<std::string>& fields) {
  std::string out = "invalid config:";
  for (const auto& f : fields) out += " [" + f + "]";
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> fields)
    : std::runtime_error(join_fields(fields)), fields_(std::move(fields)) {}

namespace {

using nlohmann::json;

template <typename T>
void read_into(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

InstanceSpec instance_from(const json& j) {
  InstanceSpec s;
  read_into(j, "generator", s.generator);
  read_into(j, "M", s.M);
  read_into(j, "d", s.d);
  read_into(j, "l", s.l);
  read_into(j, "low_norm", s.low_norm);
  read_into(j, "sparsity", s.sparsity);
  read_into(j, "beta", s.beta);
  read_into(j, "sigma", s.sigma);
  read_into(j, "seed", s.seed);
  read_into(j, "theta_per_seed", s.theta_per_seed);
  read_into(j, "path", s.path);
  return s;
}

PolicySpec policy_from(const json& j) {
  PolicySpec p;
  read_into(j, "id", p.id);
  read_into(j, "type", p.type);
  read_into(j, "sparsity_k", p.sparsity_k);
  read_into(j, "u_hat", p.u_hat);
  read_optional(j, "lambda_lower", p.lambda_lower);
  read_optional(j, "explore_budget_override", p.explore_budget_override);
  read_optional(j, "lambda_override", p.lambda_override);
  read_into(j, "rounding_repeats", p.rounding_repeats);
  read_into(j, "enable_search", p.enable_search);
  read_optional(j, "c_explore", p.c_explore);
  read_into(j, "grid", p.grid);
  read_into(j, "reward_scale", p.reward_scale);
  read_into(j, "c_pool", p.c_pool);
  read_into(j, "eta_init", p.eta_init);
  read_into(j, "r_best_bound", p.r_best_bound);
  read_into(j, "explore_exponent", p.explore_exponent);
  read_into(j, "base_estimator", p.base_estimator);
  read_into(j, "log_probs", p.log_probs);
  return p;
}

json instance_to(const InstanceSpec& s) {
  json j;
  j["generator"] = s.generator;
  if (s.generator == "file") {
    j["path"] = s.path;
  } else {
    j["M"] = s.M;
    j["d"] = s.d;
    if (s.generator == "hard") {
      j["l"] = s.l;
      j["low_norm"] = s.low_norm;
    }
    if (s.generator == "sim") j["beta"] = s.beta;
    j["sparsity"] = s.sparsity;
    j["sigma"] = s.sigma;
    j["seed"] = s.seed;
    j["theta_per_seed"] = s.theta_per_seed;
  }
  return j;
}

json policy_to(const PolicySpec& p) {
  json j;
  j["id"] = p.id;
  j["type"] = p.type;
  if (p.type == "bslb" || p.type == "ridge_etc" || p.type == "estc_rejection") {
    j["sparsity_k"] = p.sparsity_k;
    if (p.u_hat > 0) j["u_hat"] = p.u_hat;
    if (p.lambda_lower) j["lambda_lower"] = *p.lambda_lower;
    if (p.explore_budget_override) j["explore_budget_override"] = *p.explore_budget_override;
    if (p.lambda_override) j["lambda_override"] = *p.lambda_override;
    j["rounding_repeats"] = p.rounding_repeats;
    j["enable_search"] = p.enable_search;
    if (p.c_explore) j["c_explore"] = *p.c_explore;
  } else if (p.type == "cbslb") {
    if (!p.grid.empty()) j["grid"] = p.grid;
    j["reward_scale"] = p.reward_scale;
    j["c_pool"] = p.c_pool;
    if (p.eta_init > 0.0) j["eta_init"] = p.eta_init;
    j["r_best_bound"] = p.r_best_bound;
    j["explore_exponent"] = p.explore_exponent;
    j["base_estimator"] = p.base_estimator;
    j["log_probs"] = p.log_probs;
    if (p.explore_budget_override) j["explore_budget_override"] = *p.explore_budget_override;
    if (p.lambda_override) j["lambda_override"] = *p.lambda_override;
    if (p.c_explore) j["c_explore"] = *p.c_explore;
  }
  return j;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("json: ") + e.what()});
  }
  ExperimentConfig cfg;
  try {
    read_into(j, "name", cfg.name);
    read_into(j, "master_seed", cfg.master_seed);
    read_into(j, "T", cfg.T);
    read_into(j, "seeds", cfg.seeds);
    if (j.contains("instance")) cfg.instance = instance_from(j.at("instance"));
    if (j.contains("policies"))
      for (const auto& pj : j.at("policies")) cfg.policies.push_back(policy_from(pj));
    if (j.contains("constants")) {
      const auto& c = j.at("constants");
      read_into(c, "c_explore", cfg.constants.c_explore);
      read_into(c, "c_u", cfg.constants.c_u);
      read_into(c, "enumeration_cap", cfg.constants.enumeration_cap);
    }
    read_into(j, "output_dir", cfg.output_dir);
    read_into(j, "parallelism", cfg.parallelism);
  } catch (const json::exception& e) {
    throw ConfigError({std::string("json: ") + e.what()});
  }
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["master_seed"] = cfg.master_seed;
  j["T"] = cfg.T;
  j["seeds"] = cfg.seeds;
  j["instance"] = instance_to(cfg.instance);
  auto pol = json::array();
  for (const auto& p : cfg.policies) pol.push_back(policy_to(p));
  j["policies"] = std::move(pol);
  j["constants"] = {{"c_explore", cfg.constants.c_explore},
                    {"c_u", cfg.constants.c_u},
                    {"enumeration_cap", cfg.constants.enumeration_cap}};
  if (!cfg.output_dir.empty()) j["output_dir"] = cfg.output_dir;
  j["parallelism"] = cfg.parallelism;
  return j.dump(2);
}

namespace {

bool is_etc_type(const std::string& t) {
  return t == "bslb" || t == "ridge_etc" || t == "estc_rejection";
}

void validate(const ExperimentConfig& cfg, int M, int d) {
  std::vector<std::string> bad;
  if (cfg.T < 2 || cfg.T > M) bad.push_back("T: need 2 <= T <= M");
  if (cfg.seeds.empty()) bad.push_back("seeds: empty");
  if (std::set<std::uint64_t>(cfg.seeds.begin(), cfg.seeds.end()).size() != cfg.seeds.size())
    bad.push_back("seeds: duplicates");
  if (M < d) bad.push_back("instance: M < d is not supported");
  if (cfg.policies.empty()) bad.push_back("policies: empty");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
    const auto& p = cfg.policies[i];
    const std::string tag = "policies[" + std::to_string(i) + "]";
    if (p.id.empty()) bad.push_back(tag + ".id: empty");
    if (!ids.insert(p.id).second) bad.push_back(tag + ".id: duplicate '" + p.id + "'");
    if (!is_etc_type(p.type) && p.type != "random" && p.type != "cbslb")
      bad.push_back(tag + ".type: unknown '" + p.type + "'");
    if (is_etc_type(p.type)) {
      if (p.sparsity_k < 1 || p.sparsity_k > d) bad.push_back(tag + ".sparsity_k: out of [1, d]");
      if (p.u_hat < 0 || p.u_hat > M) bad.push_back(tag + ".u_hat: out of [0, M]");
      if (p.rounding_repeats < 1) bad.push_back(tag + ".rounding_repeats: must be >= 1");
      if (p.explore_budget_override &&
          (*p.explore_budget_override < 1 || *p.explore_budget_override > cfg.T))
        bad.push_back(tag + ".explore_budget_override: out of [1, T]");
      if (p.lambda_lower && !(*p.lambda_lower > 0.0 && *p.lambda_lower <= 1.0))
        bad.push_back(tag + ".lambda_lower: out of (0, 1]");
    }
    if (p.type == "cbslb") {
      if (!(p.reward_scale > 0.0)) bad.push_back(tag + ".reward_scale: must be positive");
      if (!(p.c_pool > 0.0)) bad.push_back(tag + ".c_pool: must be positive");
      if (p.base_estimator != "lasso" && p.base_estimator != "ridge")
        bad.push_back(tag + ".base_estimator: unknown '" + p.base_estimator + "'");
      for (std::size_t g = 0; g < p.grid.size(); ++g)
        if (p.grid[g] < 1 || p.grid[g] > d || (g > 0 && p.grid[g] <= p.grid[g - 1])) {
          bad.push_back(tag + ".grid: must be strictly increasing within [1, d]");
          break;
        }
    }
  }
  if (cfg.parallelism < 0) bad.push_back("parallelism: must be >= 0");
  if (!(cfg.constants.c_explore > 0.0)) bad.push_back("constants.c_explore: must be positive");
  if (!(cfg.constants.c_u > 0.0)) bad.push_back("constants.c_u: must be positive");
  if (!bad.empty()) throw ConfigError(std::move(bad));
}

struct InstanceFactory {
  const ExperimentConfig* cfg;
  ArmSet arms;
  Parameter fixed_theta;
  double sigma;

  Instance make(std::uint64_t run_seed) const {
    const InstanceSpec& s = cfg->instance;
    if (s.generator == "file" || !s.theta_per_seed)
      return Instance(arms, fixed_theta, sigma);
    Rng rng(stream_seed(cfg->master_seed, "instance-theta", run_seed));
    return Instance(arms, make_theta(rng), sigma);
  }

  Parameter make_theta(Rng& rng) const {
    const InstanceSpec& s = cfg->instance;
    if (s.generator == "hard") {
      const int k = s.sparsity > 0 ? s.sparsity : s.l;
      return gen_hard_theta(arms.matrix(), s.l, k, rng);
    }
    Parameter theta = gen_sparse_theta(s.d, std::max(s.sparsity, 1), s.beta, rng);
    theta.theta /= theta.theta.norm();
    return theta;
  }
};

InstanceFactory build_factory(const ExperimentConfig& cfg) {
  const InstanceSpec& s = cfg.instance;
  if (s.generator == "file") {
    std::ifstream in(s.path);
    if (!in) throw ConfigError({"instance.path: cannot open '" + s.path + "'"});
    std::stringstream buf;
    buf << in.rdbuf();
    Instance inst = instance_from_json(buf.str());
    if (s.theta_per_seed) throw ConfigError({"instance.theta_per_seed: not valid with files"});
    return InstanceFactory{&cfg, inst.arm_set, inst.theta, inst.noise_sigma};
  }
  std::vector<std::string> bad;
  if (s.generator != "hard" && s.generator != "sim")
    bad.push_back("instance.generator: unknown '" + s.generator + "'");
  if (s.M < 1) bad.push_back("instance.M: must be positive");
  if (s.d < 1) bad.push_back("instance.d: must be positive");
  if (s.sigma < 0.0) bad.push_back("instance.sigma: must be >= 0");
  if (s.generator == "hard" && (s.l < 1 || s.l >= s.M))
    bad.push_back("instance.l: need 1 <= l < M");
  if (s.generator == "hard" && !(s.low_norm > 0.0 && s.low_norm <= 1.0))
    bad.push_back("instance.low_norm: out of (0, 1]");
  if (s.generator == "sim" && (s.sparsity < 1 || s.sparsity > s.d))
    bad.push_back("instance.sparsity: need 1 <= sparsity <= d");
  if (s.generator == "sim" && s.beta < 0.0) bad.push_back("instance.beta: must be >= 0");
  if (!bad.empty()) throw ConfigError(std::move(bad));

  Rng arm_rng(stream_seed(cfg.master_seed, "instance-arms", s.seed));
  Eigen::MatrixXd arms = s.generator == "hard"
                             ? gen_hard_arms(s.M, s.d, s.l, s.low_norm, arm_rng)
                             : gen_sphere_arms(s.M, s.d, 1.0, arm_rng);
  InstanceFactory f{&cfg, ArmSet(std::move(arms)), Parameter(Eigen::VectorXd::Zero(s.d)), s.sigma};
  Rng theta_rng(stream_seed(cfg.master_seed, "instance-theta", s.seed));
  f.fixed_theta = f.make_theta(theta_rng);
  return f;
}

int resolved_u_hat(const PolicySpec& p, const Constants& constants, int M, int d) {
  if (p.u_hat > 0) return std::min(p.u_hat, M);
  if (p.lambda_lower) {
    const int u = choose_u_hat(d, *p.lambda_lower, UHatMode::quality, constants.c_u);
    return std::clamp(u, std::min(d, M), M);
  }
  return std::min(M, 2 * d);
}

BslbConfig to_bslb_config(const PolicySpec& p, const ExperimentConfig& cfg, int M, int d,
                          const RelaxationSolution* shared) {
  BslbConfig b;
  b.sparsity_k = p.sparsity_k;
  b.horizon = cfg.T;
  b.u_hat = resolved_u_hat(p, cfg.constants, M, d);
  b.explore_budget_override = p.explore_budget_override;
  b.lambda_override = p.lambda_override;
  b.rounding_repeats = p.rounding_repeats;
  b.enable_search = p.enable_search;
  b.c_explore = p.c_explore ? *p.c_explore : cfg.constants.c_explore;
  b.relaxation = RelaxationOptions{};
  b.shared_relaxation = shared;
  return b;
}

CorralConfig to_corral_config(const PolicySpec& p, const ExperimentConfig& cfg) {
  CorralConfig c;
  c.grid = p.grid;
  c.horizon = cfg.T;
  c.eta_init = p.eta_init;
  c.r_best_bound = p.r_best_bound;
  c.reward_scale = p.reward_scale;
  c.c_pool = p.c_pool;
  c.c_explore = p.c_explore ? *p.c_explore : cfg.constants.c_explore;
  c.explore_exponent = p.explore_exponent;
  c.base_estimator =
      p.base_estimator == "ridge" ? BaseEstimator::ridge : BaseEstimator::lasso;
  c.lambda_override = p.lambda_override;
  return c;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::string resolve_output_dir(const std::string& override_dir, const ExperimentConfig& cfg) {
  if (!override_dir.empty()) return override_dir;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("BSLB_OUTPUT_DIR"); env && *env) return env;
  return "out";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& output_dir_override,
                                int parallelism_override) {
  InstanceFactory factory = build_factory(cfg);
  const int M = factory.arms.size();
  const int d = factory.arms.dim();
  validate(cfg, M, d);

  // One relaxation solve per distinct u_hat; designs still differ per run
  // through the rounding draws.
  std::map<int, RelaxationSolution> relaxations;
  for (const auto& p : cfg.policies) {
    if (p.type == "bslb" || p.type == "ridge_etc") {
      const int u = resolved_u_hat(p, cfg.constants, M, d);
      if (!relaxations.count(u)) relaxations.emplace(u, solve_relaxation(factory.arms, u));
    } else if (p.type == "estc_rejection") {
      if (!relaxations.count(1)) relaxations.emplace(1, solve_relaxation(factory.arms, 1));
    }
  }

  const std::size_t num_seeds = cfg.seeds.size();
  const std::size_t num_tasks = cfg.policies.size() * num_seeds;
  std::vector<RunRecord> runs(num_tasks);

  // Distinct streams per run; logged below and checked for collisions.
  std::set<std::uint64_t> stream_ids;
  nlohmann::json streams_meta;
  for (const auto& p : cfg.policies) {
    for (std::uint64_t seed : cfg.seeds) {
      const std::uint64_t env_id = stream_seed(cfg.master_seed, "env:" + p.id, seed);
      const std::uint64_t pol_id = stream_seed(cfg.master_seed, "policy:" + p.id, seed);
      if (!stream_ids.insert(env_id).second || !stream_ids.insert(pol_id).second)
        throw std::runtime_error("run_experiment: rng stream collision");
      streams_meta[p.id + "-s" + std::to_string(seed)] = {{"env", env_id}, {"policy", pol_id}};
    }
  }

  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= num_tasks || failed.load()) return;
      const auto& p = cfg.policies[task / num_seeds];
      const std::uint64_t seed = cfg.seeds[task % num_seeds];
      try {
        Instance inst = factory.make(seed);
        Environment env(inst, stream_seed(cfg.master_seed, "env:" + p.id, seed));
        Rng rng(stream_seed(cfg.master_seed, "policy:" + p.id, seed));
        RunRecord rec;
        rec.policy_id = p.id;
        rec.seed = seed;
        if (p.type == "random") {
          rec.trace = run_random(env, cfg.T, rng);
        } else if (p.type == "bslb") {
          const auto& shared = relaxations.at(resolved_u_hat(p, cfg.constants, M, d));
          rec.trace = run_bslb(env, to_bslb_config(p, cfg, M, d, &shared), rng);
        } else if (p.type == "ridge_etc") {
          const auto& shared = relaxations.at(resolved_u_hat(p, cfg.constants, M, d));
          rec.trace = run_ridge_etc(env, to_bslb_config(p, cfg, M, d, &shared), rng);
        } else if (p.type == "estc_rejection") {
          BslbConfig b = to_bslb_config(p, cfg, M, d, &relaxations.at(1));
          b.u_hat = 1;
          rec.trace = run_estc_rejection(env, b, rng);
        } else {  // cbslb
          rec.trace = run_cbslb(env, to_corral_config(p, cfg), rng,
                                p.log_probs ? &rec.probs : nullptr);
        }
        runs[task] = std::move(rec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = p.id + ": " + e.what();
      }
    }
  };

  int width = parallelism_override > 0 ? parallelism_override : cfg.parallelism;
  if (width <= 0) width = static_cast<int>(std::thread::hardware_concurrency());
  width = std::max(1, std::min<int>(width, static_cast<int>(num_tasks)));
  {
    std::vector<std::thread> threads;
    threads.reserve(width);
    for (int i = 0; i < width; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_experiment: " + failure);

  // Outputs, written in config order so reruns are byte identical.
  namespace fs = std::filesystem;
  const fs::path out_dir = resolve_output_dir(output_dir_override, cfg);
  fs::create_directories(out_dir);
  const fs::path csv_path = out_dir / (cfg.name + "_runs.csv");
  {
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw std::runtime_error("run_experiment: cannot write " + csv_path.string());
    csv << "run_id,policy,seed,t,arm_index,reward,expected_reward,cum_regret\n";
    for (const auto& rec : runs) {
      const std::string run_id = rec.policy_id + "-s" + std::to_string(rec.seed);
      for (int t = 0; t < rec.trace.length(); ++t) {
        csv << run_id << ',' << rec.policy_id << ',' << rec.seed << ',' << (t + 1) << ','
            << rec.trace.arm_indices[t] << ',' << format_double(rec.trace.rewards[t]) << ','
            << format_double(rec.trace.expected_rewards[t]) << ','
            << format_double(rec.trace.cum_regret[t]) << '\n';
      }
    }
  }

  bool any_probs = false;
  for (const auto& rec : runs) any_probs |= !rec.probs.empty();
  if (any_probs) {
    std::ofstream pcsv(out_dir / (cfg.name + "_probs.csv"), std::ios::trunc);
    pcsv << "run_id,policy,seed,t,base_index,prob\n";
    for (const auto& rec : runs) {
      const std::string run_id = rec.policy_id + "-s" + std::to_string(rec.seed);
      for (std::size_t t = 0; t < rec.probs.size(); ++t)
        for (std::size_t b = 0; b < rec.probs[t].size(); ++b)
          pcsv << run_id << ',' << rec.policy_id << ',' << rec.seed << ',' << (t + 1) << ','
               << b << ',' << format_double(rec.probs[t][b]) << '\n';
    }
  }

  ExperimentResult result;
  for (const auto& p : cfg.policies) {
    PolicySummary ps;
    ps.mean_cum_regret.assign(cfg.T, 0.0);
    ps.std_cum_regret.assign(cfg.T, 0.0);
    std::vector<double> finals;
    for (const auto& rec : runs) {
      if (rec.policy_id != p.id) continue;
      for (int t = 0; t < cfg.T; ++t) ps.mean_cum_regret[t] += rec.trace.cum_regret[t];
      finals.push_back(rec.trace.cum_regret.back());
    }
    const double n = static_cast<double>(finals.size());
    for (int t = 0; t < cfg.T; ++t) ps.mean_cum_regret[t] /= n;
    if (finals.size() > 1) {
      for (const auto& rec : runs) {
        if (rec.policy_id != p.id) continue;
        for (int t = 0; t < cfg.T; ++t) {
          const double dlt = rec.trace.cum_regret[t] - ps.mean_cum_regret[t];
          ps.std_cum_regret[t] += dlt * dlt;
        }
      }
      for (int t = 0; t < cfg.T; ++t)
        ps.std_cum_regret[t] = std::sqrt(ps.std_cum_regret[t] / (n - 1.0));
    }
    ps.mean_final_regret = ps.mean_cum_regret.back();
    ps.stderr_final_regret = ps.std_cum_regret.back() / std::sqrt(n);
    std::vector<double> sorted = finals;
    std::sort(sorted.begin(), sorted.end());
    const double qs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < 5; ++i) ps.final_regret_quantiles[i] = quantile_sorted(sorted, qs[i]);
    result.summary.policies.emplace(p.id, std::move(ps));
  }

  nlohmann::json sj;
  sj["name"] = cfg.name;
  sj["master_seed"] = cfg.master_seed;
  sj["T"] = cfg.T;
  sj["num_seeds"] = cfg.seeds.size();
  nlohmann::json pol_json;
  for (const auto& [id, ps] : result.summary.policies) {
    pol_json[id] = {{"mean_cum_regret", ps.mean_cum_regret},
                    {"std_cum_regret", ps.std_cum_regret},
                    {"final_regret_quantiles", ps.final_regret_quantiles},
                    {"mean_final_regret", ps.mean_final_regret},
                    {"stderr_final_regret", ps.stderr_final_regret}};
  }
  sj["policies"] = std::move(pol_json);
  sj["streams"] = std::move(streams_meta);
  nlohmann::json meta;
  meta["instance"] = instance_to(cfg.instance);
  if (cfg.instance.generator == "hard")
    meta["theta_support_rule"] =
        "top-k energy coordinates of the high-norm arms, signs along their mean";
  for (const auto& p : cfg.policies) {
    if (p.type != "cbslb") continue;
    const int B = static_cast<int>(
        (p.grid.empty() ? sparsity_grid(d) : p.grid).size());
    meta["corral"][p.id] = {
        {"gamma", 1.0 / cfg.T},
        {"beta_growth", std::exp(1.0 / std::log(static_cast<double>(cfg.T)))},
        {"rho_init", 2.0 * B},
        {"eta", p.eta_init > 0.0 ? p.eta_init : default_eta(d, cfg.T, p.r_best_bound)},
        {"pool_size",
         std::min<long>(M, std::max<long>(1, static_cast<long>(std::ceil(
                               p.c_pool * std::cbrt(static_cast<double>(d)) *
                               std::pow(static_cast<double>(cfg.T), 2.0 / 3.0)))))}};
  }
  sj["metadata"] = std::move(meta);

  const fs::path summary_path = out_dir / (cfg.name + "_summary.json");
  {
    std::ofstream out(summary_path, std::ios::trunc);
    out << sj.dump(2) << '\n';
  }

  result.runs = std::move(runs);
  result.csv_path = csv_path.string();
  result.summary_path = summary_path.string();
  return result;
}

namespace {

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), 0);
  return seeds;
}

int scaled_budget(int k, int T) {
  const double raw = std::pow(static_cast<double>(k), 2.0 / 3.0) *
                     std::pow(static_cast<double>(T), 2.0 / 3.0);
  return static_cast<int>(std::clamp<long>(std::lround(raw), 1, T - 1));
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "sim-appendix-scaled", "unit-tiny"}; }

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "fig1") {
    cfg.master_seed = 20250401;
    cfg.T = 80;
    cfg.seeds = seed_range(20);
    cfg.instance = InstanceSpec{"hard", 500, 100, 5, 0.5, 5, 0.0, 0.1, 1, false, ""};
    PolicySpec bslb;
    bslb.id = "bslb";
    bslb.type = "bslb";
    bslb.sparsity_k = 5;
    bslb.u_hat = 200;
    bslb.explore_budget_override = 48;  // 0.6 T
    bslb.rounding_repeats = 10;
    PolicySpec rej = bslb;
    rej.id = "estc-rejection";
    rej.type = "estc_rejection";
    rej.u_hat = 0;
    PolicySpec rnd;
    rnd.id = "random";
    rnd.type = "random";
    cfg.policies = {bslb, rej, rnd};
  } else if (name == "sim-appendix-scaled") {
    cfg.master_seed = 20250402;
    cfg.T = 150;
    cfg.seeds = seed_range(20);
    cfg.instance = InstanceSpec{"sim", 2000, 200, 0, 0.5, 10, 3.0, 0.1, 1, true, ""};
    PolicySpec corral;
    corral.id = "cbslb";
    corral.type = "cbslb";
    corral.reward_scale = 1.0;
    corral.log_probs = true;
    PolicySpec corral_ridge = corral;
    corral_ridge.id = "cbslb-ridge";
    corral_ridge.base_estimator = "ridge";
    corral_ridge.log_probs = false;
    PolicySpec rnd;
    rnd.id = "random";
    rnd.type = "random";
    cfg.policies = {corral, corral_ridge, rnd};
    for (int k : sparsity_grid(200)) {
      PolicySpec base;
      base.id = "bslb-k" + std::to_string(k);
      base.type = "bslb";
      base.sparsity_k = k;
      base.u_hat = 400;
      base.explore_budget_override = scaled_budget(k, cfg.T);
      base.rounding_repeats = 10;
      cfg.policies.push_back(base);
    }
  } else if (name == "unit-tiny") {
    cfg.master_seed = 20250403;
    cfg.T = 8;
    cfg.seeds = seed_range(3);
    cfg.instance = InstanceSpec{"sim", 12, 3, 0, 0.5, 2, 0.5, 0.05, 1, false, ""};
    PolicySpec bslb;
    bslb.id = "bslb";
    bslb.type = "bslb";
    bslb.sparsity_k = 2;
    bslb.u_hat = 6;
    bslb.explore_budget_override = 4;
    bslb.rounding_repeats = 5;
    bslb.enable_search = true;
    PolicySpec rnd;
    rnd.id = "random";
    rnd.type = "random";
    cfg.policies = {bslb, rnd};
  } else {
    throw ConfigError({"preset: unknown name '" + name + "'"});
  }
  return cfg;
}

LassoBenchResult run_lasso_bench(const LassoBenchConfig& cfg) {
  if (cfg.d < 2 || cfg.k < 1 || cfg.k > cfg.d || cfg.num_seeds < 1 || cfg.ns.empty())
    throw ConfigError({"lasso-bench: bad dimensions"});
  LassoBenchResult out;
  out.ns = cfg.ns;
  for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni) {
    const int n = cfg.ns[ni];
    std::vector<double> errors;
    errors.reserve(cfg.num_seeds);
    for (int s = 0; s < cfg.num_seeds; ++s) {
      Rng theta_rng(stream_seed(cfg.master_seed, "lasso-theta", s));
      const Parameter theta = gen_sparse_theta(cfg.d, cfg.k, cfg.beta, theta_rng);
      Rng x_rng(stream_seed(cfg.master_seed, "lasso-x-" + std::to_string(n), s));
      Eigen::MatrixXd x(n, cfg.d);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < cfg.d; ++j) x(i, j) = x_rng.sign();
      Eigen::VectorXd r = x * theta.theta;
      for (int i = 0; i < n; ++i) r[i] += cfg.sigma * x_rng.normal();
      Regression reg(std::move(x), std::move(r));
      const Eigen::VectorXd theta_hat =
          lasso_fit(reg, LassoConfig{default_lambda(n, cfg.d), 10000, 1e-8});
      errors.push_back((theta_hat - theta.theta).lpNorm<1>());
    }
    std::sort(errors.begin(), errors.end());
    out.median_l1_error.push_back(quantile_sorted(errors, 0.5));
  }
  // log-log least-squares slope
  double mx = 0.0, my = 0.0;
  const int m = static_cast<int>(cfg.ns.size());
  for (int i = 0; i < m; ++i) {
    mx += std::log(static_cast<double>(cfg.ns[i]));
    my += std::log(out.median_l1_error[i]);
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < m; ++i) {
    const double dx = std::log(static_cast<double>(cfg.ns[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(out.median_l1_error[i]) - my);
  }
  out.slope = sxy / sxx;
  return out;
}

}  // namespace bslb
