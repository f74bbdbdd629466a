#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "combandit/assumptions.hpp"
#include "combandit/error.hpp"
#include "combandit/harness.hpp"
#include "combandit/presets.hpp"

namespace combandit::cli {

namespace {

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::int64_t> horizon;
  std::optional<std::string> algo;
  std::optional<int> checkpoints;
  unsigned jobs = 0;
  bool quiet = false;
};

struct PresetArgs {
  std::string out;
  std::string show;
};

struct VerifyArgs {
  std::uint64_t seed = 1;
  int vectors = 20;
  int max_arms = 8;
  int max_subset = 3;
};

ExperimentConfig resolve_config(const std::string& ref) {
  if (std::filesystem::exists(ref)) return load_config(ref);
  if (auto preset = find_preset(ref)) return *preset;
  throw ConfigError(ref, 0, "no such config file or preset");
}

void apply_overrides(ExperimentConfig& config, const RunArgs& args) {
  if (args.seed) config.master_seed = *args.seed;
  if (args.runs) config.replications = *args.runs;
  if (args.horizon) config.horizon = *args.horizon;
  if (args.checkpoints) config.checkpoints = *args.checkpoints;
  if (args.algo) {
    std::vector<AlgorithmSpec> chosen;
    std::string list = *args.algo;
    std::size_t start = 0;
    while (start <= list.size()) {
      const std::size_t comma = std::min(list.find(',', start), list.size());
      const std::string name = list.substr(start, comma - start);
      start = comma + 1;
      if (name.empty()) continue;
      const auto kind = parse_algorithm(name);
      if (!kind) throw ConfigError("--algo", 0, "unknown algorithm '" + name + "'");
      AlgorithmSpec spec;
      spec.kind = *kind;
      // Keep parameters the config already carries for this algorithm.
      for (const auto& existing : config.algorithms) {
        if (existing.kind == *kind) spec = existing;
      }
      chosen.push_back(spec);
    }
    config.algorithms = std::move(chosen);
  }
  try {
    config.validate();
  } catch (const BanditError& e) {
    throw ConfigError("overrides", 0, e.what());
  }
}

int do_run(const RunArgs& args, std::ostream& out) {
  ExperimentConfig config = resolve_config(args.config);
  apply_overrides(config, args);

  std::string dir = args.out;
  if (dir.empty()) {
    const char* env_dir = std::getenv("DART_OUT_DIR");
    dir = env_dir && *env_dir ? env_dir : "results";
  }
  const ExperimentResult result = run_experiment(config, args.jobs);
  const OutputPaths paths = write_results(result, dir);

  if (!args.quiet) {
    out << "experiment " << config.name << ": N=" << config.num_arms << " K=" << config.subset_size
        << " T=" << config.horizon << " runs=" << config.replications << " best=" << result.best_action.to_string()
        << "\n";
    for (const auto& a : result.algorithms) {
      out << "  " << a.algorithm << ": mean final regret " << format_double(a.mean_final_regret())
          << ", identified " << a.identified_count() << "/" << a.runs.size();
      if (a.failed_runs) out << ", FAILED " << a.failed_runs;
      out << "\n";
      for (const auto& f : a.failures) out << "    warning: " << f << "\n";
    }
    out << "wrote " << paths.results.string() << ", " << paths.aggregate.string() << ", "
        << paths.manifest.string() << "\n";
  }
  for (const auto& a : result.algorithms) {
    if (a.runs.empty()) return 2;
  }
  return 0;
}

int do_presets(const PresetArgs& args, std::ostream& out) {
  if (!args.show.empty()) {
    auto preset = find_preset(args.show);
    if (!preset) throw ConfigError(args.show, 0, "unknown preset");
    out << to_config_text(*preset);
    return 0;
  }
  if (!args.out.empty()) {
    std::filesystem::create_directories(args.out);
    for (const auto& p : presets()) {
      const auto path = std::filesystem::path(args.out) / (p.config.name + ".ini");
      std::ofstream file(path, std::ios::binary);
      file << "# " << p.description << "\n" << to_config_text(p.config);
      if (!file) throw BanditError(ErrorCode::Io, "cannot write " + path.string());
      out << path.string() << "\n";
    }
    return 0;
  }
  for (const auto& p : presets()) out << p.config.name << "\t" << p.description << "\n";
  return 0;
}

int do_verify(const VerifyArgs& args, std::ostream& out) {
  if (args.max_arms < 2 || args.max_arms > kMaxEnumerationArms) {
    throw ConfigError("--max-arms", 0, "must lie in [2, " + std::to_string(kMaxEnumerationArms) + "]");
  }
  if (args.max_subset < 1) throw ConfigError("--max-subset", 0, "must be >= 1");
  if (args.vectors < 1) throw ConfigError("--vectors", 0, "must be >= 1");
  const SuiteReport report = run_assumption_suite(args.seed, args.vectors, args.max_arms, args.max_subset);
  for (const auto& line : report.lines) {
    out << (line.passed() ? "PASS" : "FAIL") << "  " << to_string(line.reward) << ": " << line.environments
        << " environments, " << line.ordering_checks << " ordering checks, " << line.ordering_failures
        << " ordering failures, " << line.monotonicity_failures << " monotonicity violations\n";
  }
  out << (report.passed() ? "all assumption checks passed" : "assumption checks FAILED") << "\n";
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial bandit experiments with DART and baseline policies", "dartbench"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an experiment and write CSV results");
  run->add_option("--config", run_args.config, "Config file or preset name")->required();
  run->add_option("--out", run_args.out, "Output directory (default: $DART_OUT_DIR or ./results)");
  run->add_option("--seed", run_args.seed, "Override the master seed");
  run->add_option("--runs", run_args.runs, "Override the replication count");
  run->add_option("--horizon", run_args.horizon, "Override the horizon T");
  run->add_option("--algo", run_args.algo, "Comma-separated algorithms to run");
  run->add_option("--jobs", run_args.jobs, "Worker threads (default: available parallelism)");
  run->add_option("--checkpoints", run_args.checkpoints, "Number of regret checkpoints");
  run->add_flag("--quiet", run_args.quiet, "Suppress the summary");

  PresetArgs preset_args;
  auto* pre = app.add_subcommand("presets", "List built-in configs, print one, or write them all");
  pre->add_option("--out", preset_args.out, "Write every preset as <name>.ini into this directory");
  pre->add_option("--show", preset_args.show, "Print one preset's config text");

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Brute-force ordering and monotonicity checks");
  ver->add_option("--seed", verify_args.seed, "Seed for the random mean vectors");
  ver->add_option("--vectors", verify_args.vectors, "Mean vectors per (N, K)");
  ver->add_option("--max-arms", verify_args.max_arms, "Largest N (at most 12)");
  ver->add_option("--max-subset", verify_args.max_subset, "Largest K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return do_run(run_args, out);
    if (pre->parsed()) return do_presets(preset_args, out);
    if (ver->parsed()) return do_verify(verify_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const BanditError& e) {
    err << (e.code() == ErrorCode::Config ? "config error: " : "error: ") << e.what() << "\n";
    return e.code() == ErrorCode::Config ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace combandit::cli
