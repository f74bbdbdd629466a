#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "combandit/action.hpp"
#include "combandit/environment.hpp"
#include "combandit/random.hpp"
#include "combandit/trace.hpp"

namespace combandit::dart {

enum class Phase { Exploring, Committed };
enum class ArmStatus : std::uint8_t { Active, Accepted, Rejected };

struct DartOptions {
  /// Resolution floor; defaults to default_lambda(N, K, T, epoch_constant).
  std::optional<double> lambda;
  /// Epochs per confidence level: n = epoch_constant * ln(NT) / delta^2.
  double epoch_constant = 288.0;
};

/// Full algorithm state. The accept/active/reject partition is the `status`
/// vector, so the three sets are disjoint and cover [0, N) by construction.
struct DartState {
  int num_arms = 0;
  int subset_size = 0;
  std::int64_t horizon = 0;
  std::int64_t t = 0;
  std::int64_t epoch = 0;

  std::vector<ArmStatus> status;
  std::vector<double> mu_hat;
  std::vector<std::int64_t> pulls;

  double delta = 1.0;
  double n_threshold = 0.0;
  double lambda = 0.0;
  double epoch_constant = 288.0;

  Phase phase = Phase::Exploring;
  std::optional<Action> committed;

  std::vector<Arm> arms_with(ArmStatus s) const;
  std::vector<Arm> accepted() const { return arms_with(ArmStatus::Accepted); }
  std::vector<Arm> active() const { return arms_with(ArmStatus::Active); }
  std::vector<Arm> rejected() const { return arms_with(ArmStatus::Rejected); }
  int count(ArmStatus s) const;
  /// K_e: slots left to fill once the accepted arms are placed.
  int open_slots() const { return subset_size - count(ArmStatus::Accepted); }
};

/// One exploring group: K_e distinct active arms. Padded repeats in the last
/// group of an epoch carry update_mask = false.
struct Group {
  std::vector<Arm> arms;
  std::vector<bool> update_mask;
};

struct EpochPlan {
  std::vector<Group> groups;
};

/// sqrt(2.5 c N K ln(2NT) / T); with the default c = 288 this is
/// sqrt(720 N K ln(2NT) / T).
double default_lambda(int num_arms, int subset_size, std::int64_t horizon, double epoch_constant = 288.0);

/// Throws InvalidDims unless 1 <= K < N and T >= 1.
DartState dart_init(int num_arms, int subset_size, std::int64_t horizon, const DartOptions& options = {});

/// Shuffles the active arms and splits them into groups of K_e, completing the
/// last group cyclically from the head of the permutation.
EpochPlan plan_epoch(const DartState& state, RandomSource& rng);

/// Same split for a caller-supplied ordering of the active arms.
EpochPlan plan_epoch_from_permutation(const DartState& state, std::span<const Arm> permutation);

/// accept ∪ group.
Action compose_action(const DartState& state, const Group& group);

/// Records one play of compose_action(state, group). Only unmasked arms of the
/// group are updated; accepted arms keep their estimates. Advances t.
void compose_and_observe(DartState& state, const Group& group, double joint_reward);

/// Closes an epoch: accept/reject against the K-th and (K+1)-th order
/// statistics, shrink delta on schedule, and commit when delta < lambda or
/// only K candidates remain.
void end_epoch(DartState& state);

/// Human-readable descriptions of every broken state invariant.
std::vector<std::string> invariant_violations(const DartState& state);

using EpochObserver = std::function<void(const DartState&)>;
using StopPredicate = std::function<bool(std::int64_t steps_played)>;

struct DartRun {
  RegretTrace trace;
  DartState state;
};

/// Plays exactly `horizon` steps of DART against `env`. The observer, if any,
/// sees the state after every completed epoch.
DartRun run_dart(const Environment& env, std::int64_t horizon, const DartOptions& options, RandomSource& rng,
                 const EpochObserver& observer = {});

/// Doubling-trick restarts: fresh DART instances on segments of length
/// 1, 2, 4, ... each with its own default lambda, until `stop` returns true.
RegretTrace run_dart_anytime(const Environment& env, RandomSource& rng, const StopPredicate& stop,
                             double epoch_constant = 288.0);

/// Anytime run stopped after exactly `horizon` steps.
RegretTrace run_dart_anytime(const Environment& env, std::int64_t horizon, RandomSource& rng,
                             double epoch_constant = 288.0);

}  // namespace combandit::dart
