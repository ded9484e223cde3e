#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bslb/bandit.hpp"
#include "bslb/model.hpp"

namespace bslb {

// Config validation failure; lists every offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

struct InstanceSpec {
  std::string generator;  // "hard" | "sim" | "file"
  int M = 0;
  int d = 0;
  int l = 0;              // hard: number of unit-norm arms
  double low_norm = 0.5;  // hard: norm of the remaining arms
  int sparsity = 0;       // theta support size (hard defaults to l)
  double beta = 0.0;      // sim: tail ratio
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool theta_per_seed = false;  // redraw theta for every run seed
  std::string path;             // file generator
};

struct PolicySpec {
  std::string id;
  std::string type;  // "bslb" | "random" | "estc_rejection" | "ridge_etc" | "cbslb"
  // explore-then-commit family
  int sparsity_k = 1;
  int u_hat = 0;  // 0: derive from lambda_lower or fall back to min(M, 2d)
  std::optional<double> lambda_lower;
  std::optional<int> explore_budget_override;
  std::optional<double> lambda_override;
  int rounding_repeats = 10;
  bool enable_search = false;
  std::optional<double> c_explore;  // overrides the global constant
  // corral family
  std::vector<int> grid;
  double reward_scale = 1.0;
  double c_pool = 1.0;
  double eta_init = 0.0;
  double r_best_bound = 1.0;
  double explore_exponent = 2.0 / 3.0;
  std::string base_estimator = "lasso";
  bool log_probs = false;
};

struct Constants {
  double c_explore = 1.0;
  double c_u = 1.0;
  std::uint64_t enumeration_cap = 2'000'000;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t master_seed = 1;
  int T = 0;
  std::vector<std::uint64_t> seeds;
  InstanceSpec instance;
  std::vector<PolicySpec> policies;
  Constants constants;
  std::string output_dir;
  int parallelism = 0;  // 0: hardware concurrency
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct RunRecord {
  std::string policy_id;
  std::uint64_t seed = 0;
  RunTrace trace;
  std::vector<std::vector<double>> probs;  // cbslb with log_probs only
};

struct PolicySummary {
  std::vector<double> mean_cum_regret;
  std::vector<double> std_cum_regret;
  std::array<double, 5> final_regret_quantiles{};  // 0, 25, 50, 75, 100
  double mean_final_regret = 0.0;
  double stderr_final_regret = 0.0;
};

struct Summary {
  std::map<std::string, PolicySummary> policies;
};

struct ExperimentResult {
  Summary summary;
  std::vector<RunRecord> runs;  // ordered by (policy position, seed position)
  std::string csv_path;
  std::string summary_path;
};

// Runs every (policy, seed) pair on its own RNG streams, writes the per-round
// CSV and the summary JSON, and returns everything in memory. Deterministic
// for a fixed config, independent of the parallelism width.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& output_dir_override = "",
                                int parallelism_override = 0);

// Output directory resolution: explicit argument, then the config, then the
// BSLB_OUTPUT_DIR environment variable, then "./out".
std::string resolve_output_dir(const std::string& override_dir, const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

// Estimation-error sweep behind the lasso-bench subcommand: median l1 error
// of the Lasso on a fixed instance family across sample sizes, plus the
// log-log slope.
struct LassoBenchConfig {
  int d = 200;
  int k = 5;
  double beta = 0.0;
  double sigma = 0.5;
  std::vector<int> ns = {200, 800, 3200};
  int num_seeds = 50;
  std::uint64_t master_seed = 1;
};

struct LassoBenchResult {
  std::vector<int> ns;
  std::vector<double> median_l1_error;
  double slope = 0.0;
};

LassoBenchResult run_lasso_bench(const LassoBenchConfig& cfg);

}  // namespace bslb
