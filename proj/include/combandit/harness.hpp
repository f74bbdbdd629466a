#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "combandit/config.hpp"
#include "combandit/environment.hpp"
#include "combandit/random.hpp"
#include "combandit/trace.hpp"

namespace combandit {

/// Runs one policy for `horizon` steps.
RegretTrace run_policy(const AlgorithmSpec& spec, const Environment& env, std::int64_t horizon, RandomSource& rng);

struct RunResult {
  int run_id = 0;
  std::uint64_t seed = 0;
  std::vector<RegretPoint> regret;
  std::optional<Action> final_action;
  bool identified = false;
};

struct AggregatePoint {
  std::int64_t t = 0;
  double mean_regret = 0.0;
  double min_regret = 0.0;
  double max_regret = 0.0;
};

struct AlgorithmResult {
  std::string algorithm;
  std::vector<RunResult> runs;  // successful runs, by run_id
  std::vector<AggregatePoint> aggregate;
  int failed_runs = 0;
  std::vector<std::string> failures;

  int identified_count() const;
  double mean_final_regret() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  Action best_action;
  double best_reward = 0.0;
  std::vector<AlgorithmResult> algorithms;

  const AlgorithmResult* find(std::string_view algorithm) const;
};

/// Mean/min/max across runs at each shared checkpoint.
std::vector<AggregatePoint> aggregate_runs(const std::vector<RunResult>& runs);

/// Executes every (algorithm, replication) pair on up to `jobs` threads
/// (0: hardware concurrency). The result does not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs = 0);

struct OutputPaths {
  std::filesystem::path results;    // <name>.csv
  std::filesystem::path aggregate;  // <name>_agg.csv
  std::filesystem::path manifest;   // <name>.meta
};

OutputPaths output_paths(const std::filesystem::path& dir, const std::string& name);

inline constexpr std::string_view kResultsHeader = "algorithm,run_id,seed,t,cumulative_regret";
inline constexpr std::string_view kAggregateHeader = "algorithm,t,mean_regret,min_regret,max_regret";

/// Writes the per-run CSV, the aggregate CSV, and the manifest into `dir`.
/// Throws BanditError(Io) naming the path on failure.
OutputPaths write_results(const ExperimentResult& result, const std::filesystem::path& dir);

struct ResultRow {
  std::string algorithm;
  int run_id = 0;
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  double cumulative_regret = 0.0;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct AggregateRow {
  std::string algorithm;
  AggregatePoint point;
};

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

}  // namespace combandit
