#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "combandit/baselines.hpp"
#include "combandit/environment.hpp"

namespace combandit {

enum class AlgorithmKind { Dart, DartAnytime, CombUcb, EpsilonGreedy, Oracle };

std::string_view to_string(AlgorithmKind kind);
std::optional<AlgorithmKind> parse_algorithm(std::string_view name);

/// Per-algorithm parameters. Fields irrelevant to `kind` are ignored.
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Dart;

  // dart, dart_anytime
  double epoch_constant = 288.0;
  std::optional<double> lambda;     // explicit resolution floor
  std::optional<double> lipschitz;  // U: scales the default lambda

  // epsilon_greedy
  baselines::EpsilonGreedyOptions epsilon_greedy;

  std::string name() const { return std::string(to_string(kind)); }
  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&);
};

struct EnvironmentSpec {
  EnvironmentKind kind = EnvironmentKind::IndependentBernoulli;
  JointReward reward = JointReward::Mean;

  // Bernoulli: explicit means, or Uniform[0,1] draws frozen by means_seed.
  std::vector<double> means;
  bool uniform_means = false;
  std::optional<std::uint64_t> means_seed;  // defaults to the master seed
  /// Redraw uniform means until mean_(K) - mean_(K+1) reaches this gap.
  double min_boundary_gap = 0.0;

  // Correlated Gaussian.
  std::optional<double> epsilon;  // nullopt: (sigma / 2) sqrt(N K / 2T)
  double sigma = 1.0;
  std::vector<Arm> optimal_set;  // empty: arms 0..K-1

  friend bool operator==(const EnvironmentSpec&, const EnvironmentSpec&) = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  int num_arms = 0;
  int subset_size = 0;
  std::int64_t horizon = 0;
  EnvironmentSpec environment;
  std::vector<AlgorithmSpec> algorithms;
  int replications = 25;
  std::uint64_t master_seed = 0;
  /// Number of checkpoints; the stride is max(1, T / checkpoints).
  int checkpoints = 500;

  std::int64_t checkpoint_stride() const;
  /// Throws BanditError(Config) naming the offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

/// (sigma / 2) sqrt(N K / 2T).
double lower_bound_epsilon(int num_arms, int subset_size, std::int64_t horizon, double sigma);

/// Materializes the environment, drawing frozen uniform means if requested.
Environment build_environment(const ExperimentConfig& config);

/// Resolution floor a DART spec uses for horizon T.
double resolve_lambda(const AlgorithmSpec& spec, int num_arms, int subset_size, std::int64_t horizon);

/// Error raised while reading a config file; carries the line (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the INI-style config format. `source` names the input in messages.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

}  // namespace combandit
