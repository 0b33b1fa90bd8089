// Command-line front end: run presets or config files, compare SSA against
// BFOA, list presets, validate configs.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmsearch/swarmsearch.hpp"

namespace fs = std::filesystem;
using namespace swarmsearch;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// A preset name or a path to a JSON config file.
ExperimentConfig resolve(const std::string& ref) {
  if (auto preset = find_preset(ref)) return *preset;
  std::ifstream in(ref);
  if (!in) throw ConfigError("'" + ref + "' is neither a preset nor a readable config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

fs::path output_root(const std::string& flag, const ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("SWARMSEARCH_OUT"); env && *env) return env;
  return "runs";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm search and bacterial foraging on discretized landscapes"};
  app.require_subcommand(1);

  std::string run_ref;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> run_replicates;
  std::string run_out;
  bool run_check = false;
  auto* run = app.add_subcommand("run", "Run a preset or config file");
  run->add_option("config", run_ref, "Preset name or config path")->required();
  run->add_option("--seed", run_seed, "Base seed (replicate r uses seed + r)");
  run->add_option("--replicates", run_replicates, "Number of replicates");
  run->add_option("--out", run_out, "Output directory (default: config, $SWARMSEARCH_OUT, or ./runs)");
  run->add_flag("--check-invariants", run_check, "Verify occupancy and field invariants after every step");

  std::vector<std::string> cmp_refs;
  std::optional<std::size_t> cmp_replicates;
  double cmp_levels = 2.0;
  std::optional<double> cmp_delta;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Compare SSA with a matched BFOA run");
  compare->add_option("configs", cmp_refs, "SSA preset/config, optionally followed by a BFOA config")
      ->required()
      ->expected(1, 2);
  compare->add_option("--replicates", cmp_replicates, "Number of seeds (default 10)");
  compare->add_option("--delta-levels", cmp_levels, "Tolerance in gray levels of the altitude range");
  compare->add_option("--delta", cmp_delta, "Absolute tolerance (overrides --delta-levels)");
  compare->add_option("--out", cmp_out, "Write the report JSON here as well as to stdout");

  auto* presets = app.add_subcommand("presets", "List built-in presets");

  std::string validate_ref;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config file without running it");
  validate_cmd->add_option("config", validate_ref, "Config path or preset")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets) {
      for (const std::string& name : preset_names()) {
        std::cout << name << "\t" << preset_description(name) << "\n";
      }
      return 0;
    }
    if (*validate_cmd) {
      const ExperimentConfig cfg = resolve(validate_ref);
      std::cout << "ok: " << cfg.name << " (" << to_string(cfg.algorithm) << ", " << cfg.schedule.phases.size()
                << " phase(s), t_max=" << cfg.schedule.t_max << ")\n";
      return 0;
    }
    if (*run) {
      ExperimentConfig cfg = resolve(run_ref);
      if (run_seed) cfg.seed = *run_seed;
      if (run_replicates) cfg.replicates = *run_replicates;
      if (run_check) cfg.check_invariants = true;
      validate(cfg);
      const fs::path root = output_root(run_out, cfg);
      const ExperimentResult result = run_experiment(cfg, root);
      for (const ReplicateResult& r : result.replicates) {
        std::cout << r.dir.string() << "  seed=" << r.seed << "  wall=" << r.summary.wall_seconds << "s";
        for (const PhaseSummary& p : r.summary.phases) {
          std::cout << "  [phase " << p.phase << " capture=" << p.final_capture_ratio
                    << " best=" << p.best_so_far << "]";
        }
        std::cout << "\n";
      }
      return 0;
    }
    if (*compare) {
      ExperimentConfig ssa = resolve(cmp_refs.front());
      ExperimentConfig bfoa = cmp_refs.size() > 1 ? resolve(cmp_refs[1]) : bfoa_counterpart(ssa);
      ssa.replicates = cmp_replicates.value_or(10);
      CompareOptions opt;
      opt.delta_levels = cmp_levels;
      opt.delta = cmp_delta;
      const std::string report = report_to_json(compare_ssa_bfoa(ssa, bfoa, opt)).dump(2) + "\n";
      std::cout << report;
      if (!cmp_out.empty()) write_file(cmp_out, report);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
