// Command-line front end: run experiment configs, emit preset configs, run
// the standalone subset-selection step, and sweep the lasso error scaling.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bslb/design.hpp"
#include "bslb/harness.hpp"
#include "bslb/model.hpp"
#include "bslb/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bslb::ConfigError({"cannot open '" + path + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_run(const std::string& config_path, const std::string& output_dir, int parallel) {
  const bslb::ExperimentConfig cfg = bslb::config_from_json(read_file(config_path));
  const bslb::ExperimentResult result = bslb::run_experiment(cfg, output_dir, parallel);
  std::cout << "wrote " << result.csv_path << "\n";
  std::cout << "wrote " << result.summary_path << "\n";
  for (const auto& [id, ps] : result.summary.policies) {
    std::cout << id << ": mean final regret " << ps.mean_final_regret << " (stderr "
              << ps.stderr_final_regret << ")\n";
  }
  return kExitOk;
}

int cmd_preset(const std::string& name, const std::string& out_path, bool list) {
  if (list) {
    for (const auto& n : bslb::preset_names()) std::cout << n << "\n";
    return kExitOk;
  }
  const std::string text = bslb::config_to_json(bslb::preset_config(name));
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_design(const std::string& instance_path, int u_hat, int repeats, bool search,
               std::uint64_t seed, std::uint64_t enumeration_cap) {
  const bslb::Instance inst = bslb::instance_from_json(read_file(instance_path));
  if (u_hat < 1 || u_hat > inst.num_arms())
    throw bslb::ConfigError({"--u-hat: need 1 <= u_hat <= M"});
  bslb::GoodSubsetOptions opt;
  opt.rounding_repeats = repeats;
  opt.enable_search = search;
  opt.search.enumeration_cap = enumeration_cap;
  bslb::Rng rng(bslb::stream_seed(seed, "design-cli"));
  const bslb::Design design = bslb::get_good_subset(inst.arm_set, u_hat, opt, rng);
  std::cout << bslb::design_to_json(design) << "\n";
  return kExitOk;
}

int cmd_lasso_bench(const bslb::LassoBenchConfig& cfg) {
  const bslb::LassoBenchResult res = bslb::run_lasso_bench(cfg);
  nlohmann::json j;
  j["ns"] = res.ns;
  j["median_l1_error"] = res.median_l1_error;
  j["slope"] = res.slope;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocked sparse linear bandit simulator"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  int parallel = 0;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment config JSON")->required();
  run->add_option("--output-dir", output_dir, "Output directory");
  run->add_option("--parallel", parallel, "Worker threads (0 = all cores)");

  std::string preset_name, preset_out;
  bool preset_list = false;
  auto* preset = app.add_subcommand("preset", "Emit a ready-to-run config");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_option("--out", preset_out, "Write to a file instead of stdout");
  preset->add_flag("--list", preset_list, "List preset names");

  std::string instance_path;
  int u_hat = 0, repeats = 10;
  bool search = false;
  std::uint64_t design_seed = 1;
  std::uint64_t enumeration_cap = 2'000'000;
  auto* design = app.add_subcommand("design", "Standalone subset selection");
  design->add_option("instance", instance_path, "Instance JSON")->required();
  design->add_option("--u-hat", u_hat, "Cap parameter")->required();
  design->add_option("--repeats", repeats, "Rounding repeats");
  design->add_flag("--search", search, "Also run the exhaustive search");
  design->add_option("--seed", design_seed, "Rounding seed");
  design->add_option("--enumeration-cap", enumeration_cap, "Subset enumeration cap");

  bslb::LassoBenchConfig bench;
  auto* lasso = app.add_subcommand("lasso-bench", "Lasso error-scaling sweep");
  lasso->add_option("--d", bench.d, "Dimension");
  lasso->add_option("--k", bench.k, "Sparsity");
  lasso->add_option("--beta", bench.beta, "Tail ratio");
  lasso->add_option("--sigma", bench.sigma, "Noise scale");
  lasso->add_option("--ns", bench.ns, "Sample sizes");
  lasso->add_option("--seeds", bench.num_seeds, "Seeds per sample size");
  lasso->add_option("--master-seed", bench.master_seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, output_dir, parallel);
    if (preset->parsed()) {
      if (!preset_list && preset_name.empty())
        throw bslb::ConfigError({"preset: name required (or --list)"});
      return cmd_preset(preset_name, preset_out, preset_list);
    }
    if (design->parsed())
      return cmd_design(instance_path, u_hat, repeats, search, design_seed, enumeration_cap);
    if (lasso->parsed()) return cmd_lasso_bench(bench);
  } catch (const bslb::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
