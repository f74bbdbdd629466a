#include "combandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "combandit/baselines.hpp"
#include "combandit/dart.hpp"
#include "combandit/error.hpp"

namespace combandit {

RegretTrace run_policy(const AlgorithmSpec& spec, const Environment& env, std::int64_t horizon, RandomSource& rng) {
  switch (spec.kind) {
    case AlgorithmKind::Dart: {
      dart::DartOptions options;
      options.epoch_constant = spec.epoch_constant;
      options.lambda = resolve_lambda(spec, env.num_arms(), env.subset_size(), horizon);
      return dart::run_dart(env, horizon, options, rng).trace;
    }
    case AlgorithmKind::DartAnytime: return dart::run_dart_anytime(env, horizon, rng, spec.epoch_constant);
    case AlgorithmKind::CombUcb: return baselines::run_comb_ucb(env, horizon, rng);
    case AlgorithmKind::EpsilonGreedy: return baselines::run_epsilon_greedy(env, horizon, spec.epsilon_greedy, rng);
    case AlgorithmKind::Oracle: return baselines::run_oracle(env, horizon);
  }
  throw BanditError(ErrorCode::Config, "unknown algorithm");
}

int AlgorithmResult::identified_count() const {
  return static_cast<int>(std::count_if(runs.begin(), runs.end(), [](const RunResult& r) { return r.identified; }));
}

double AlgorithmResult::mean_final_regret() const {
  return aggregate.empty() ? 0.0 : aggregate.back().mean_regret;
}

const AlgorithmResult* ExperimentResult::find(std::string_view algorithm) const {
  for (const auto& a : algorithms) {
    if (a.algorithm == algorithm) return &a;
  }
  return nullptr;
}

std::vector<AggregatePoint> aggregate_runs(const std::vector<RunResult>& runs) {
  std::vector<AggregatePoint> out;
  if (runs.empty()) return out;
  const std::size_t points = runs.front().regret.size();
  for (const auto& r : runs) {
    if (r.regret.size() != points) throw BanditError(ErrorCode::WrongArity, "runs have different checkpoints");
  }
  out.reserve(points);
  for (std::size_t c = 0; c < points; ++c) {
    AggregatePoint p;
    p.t = runs.front().regret[c].t;
    p.min_regret = std::numeric_limits<double>::infinity();
    p.max_regret = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const auto& r : runs) {
      const double v = r.regret[c].cumulative_regret;
      total += v;
      p.min_regret = std::min(p.min_regret, v);
      p.max_regret = std::max(p.max_regret, v);
    }
    // The mean can round outside [min, max] by an ulp when all runs agree.
    p.mean_regret = std::clamp(total / static_cast<double>(runs.size()), p.min_regret, p.max_regret);
    out.push_back(p);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs) {
  config.validate();
  const Environment env = build_environment(config);
  const std::vector<std::int64_t> checkpoints = checkpoint_times(config.horizon, config.checkpoint_stride());

  struct Slot {
    std::optional<RunResult> result;
    std::string error;
  };
  const std::size_t reps = static_cast<std::size_t>(config.replications);
  const std::size_t total = config.algorithms.size() * reps;
  std::vector<Slot> slots(total);

  auto work = [&](std::size_t index) {
    const AlgorithmSpec& spec = config.algorithms[index / reps];
    const int run_id = static_cast<int>(index % reps);
    try {
      RunResult& r = slots[index].result.emplace();
      r.run_id = run_id;
      r.seed = replication_seed(config.master_seed, static_cast<std::uint64_t>(run_id));
      RandomSource rng(r.seed);
      const RegretTrace trace = run_policy(spec, env, config.horizon, rng);
      if (trace.steps() != config.horizon) {
        throw BanditError(ErrorCode::WrongArity, "policy played " + std::to_string(trace.steps()) + " steps");
      }
      r.regret = cumulative_regret(trace, checkpoints);
      r.final_action = trace.final_action;
      r.identified = trace.final_action && *trace.final_action == env.best_action();
    } catch (const std::exception& e) {
      slots[index].result.reset();
      slots[index].error = spec.name() + " run " + std::to_string(run_id) + ": " + e.what();
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) work(i);
      });
    }
  }

  ExperimentResult result;
  result.config = config;
  result.best_action = env.best_action();
  result.best_reward = env.best_reward();
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    AlgorithmResult ar;
    ar.algorithm = config.algorithms[a].name();
    for (std::size_t r = 0; r < reps; ++r) {
      Slot& slot = slots[a * reps + r];
      if (slot.result) {
        ar.runs.push_back(std::move(*slot.result));
      } else {
        ++ar.failed_runs;
        ar.failures.push_back(std::move(slot.error));
      }
    }
    ar.aggregate = aggregate_runs(ar.runs);
    result.algorithms.push_back(std::move(ar));
  }
  return result;
}

OutputPaths output_paths(const std::filesystem::path& dir, const std::string& name) {
  return {dir / (name + ".csv"), dir / (name + "_agg.csv"), dir / (name + ".meta")};
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BanditError(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw BanditError(ErrorCode::Io, "write failed for " + path.string());
}

std::string manifest_text(const ExperimentResult& result) {
  const Environment env = build_environment(result.config);
  std::string text = to_config_text(result.config);
  text += "\n[manifest]\n";
  text += "best_action = ";
  for (std::size_t i = 0; i < result.best_action.size(); ++i) {
    text += (i ? ", " : "") + std::to_string(result.best_action.arms()[i]);
  }
  text += "\nbest_reward = " + format_double(result.best_reward) + "\n";
  text += "arm_means = ";
  for (std::size_t i = 0; i < env.arm_means().size(); ++i) {
    text += (i ? ", " : "") + format_double(env.arm_means()[i]);
  }
  text += "\n";
  for (int r = 0; r < result.config.replications; ++r) {
    text += "seed." + std::to_string(r) + " = " +
            std::to_string(replication_seed(result.config.master_seed, static_cast<std::uint64_t>(r))) + "\n";
  }
  for (const auto& a : result.algorithms) {
    text += "failed." + a.algorithm + " = " + std::to_string(a.failed_runs) + "\n";
    text += "identified." + a.algorithm + " = " + std::to_string(a.identified_count()) + "\n";
  }
  return text;
}

}  // namespace

OutputPaths write_results(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw BanditError(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  const OutputPaths paths = output_paths(dir, result.config.name);

  std::string rows(kResultsHeader);
  rows += '\n';
  std::string agg(kAggregateHeader);
  agg += '\n';
  for (const auto& a : result.algorithms) {
    for (const auto& run : a.runs) {
      for (const auto& p : run.regret) {
        rows += a.algorithm + ',' + std::to_string(run.run_id) + ',' + std::to_string(run.seed) + ',' +
                std::to_string(p.t) + ',' + format_double(p.cumulative_regret) + '\n';
      }
    }
    for (const auto& p : a.aggregate) {
      agg += a.algorithm + ',' + std::to_string(p.t) + ',' + format_double(p.mean_regret) + ',' +
             format_double(p.min_regret) + ',' + format_double(p.max_regret) + '\n';
    }
  }
  write_file(paths.results, rows);
  write_file(paths.aggregate, agg);
  write_file(paths.manifest, manifest_text(result));
  return paths;
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::string_view header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BanditError(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw BanditError(ErrorCode::Io, path.string() + ": unexpected header '" + line + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <class T>
T parse_field(const std::string& text, const std::filesystem::path& path) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw BanditError(ErrorCode::Io, path.string() + ": bad field '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::vector<ResultRow> out;
  for (const auto& f : read_csv(path, kResultsHeader)) {
    if (f.size() != 5) throw BanditError(ErrorCode::Io, path.string() + ": expected 5 fields");
    out.push_back({f[0], parse_field<int>(f[1], path), parse_field<std::uint64_t>(f[2], path),
                   parse_field<std::int64_t>(f[3], path), parse_field<double>(f[4], path)});
  }
  return out;
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path) {
  std::vector<AggregateRow> out;
  for (const auto& f : read_csv(path, kAggregateHeader)) {
    if (f.size() != 5) throw BanditError(ErrorCode::Io, path.string() + ": expected 5 fields");
    out.push_back({f[0],
                   {parse_field<std::int64_t>(f[1], path), parse_field<double>(f[2], path),
                    parse_field<double>(f[3], path), parse_field<double>(f[4], path)}});
  }
  return out;
}

}  // namespace combandit
