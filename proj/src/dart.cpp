#include "combandit/dart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "combandit/error.hpp"

namespace combandit::dart {

std::vector<Arm> DartState::arms_with(ArmStatus s) const {
  std::vector<Arm> out;
  for (Arm a = 0; a < num_arms; ++a) {
    if (status[a] == s) out.push_back(a);
  }
  return out;
}

int DartState::count(ArmStatus s) const { return static_cast<int>(std::count(status.begin(), status.end(), s)); }

namespace {

double log_nt(const DartState& s) { return std::log(static_cast<double>(s.num_arms) * static_cast<double>(s.horizon)); }

double threshold_for(const DartState& s, double delta) { return s.epoch_constant * log_nt(s) / (delta * delta); }

void commit(DartState& s, const std::vector<Arm>& ranked) {
  std::vector<Arm> chosen = s.accepted();
  int slots = s.open_slots();
  for (Arm a : ranked) {
    if (slots == 0) break;
    if (s.status[a] == ArmStatus::Active) {
      chosen.push_back(a);
      --slots;
    }
  }
  s.committed = make_action(chosen, s.num_arms, s.subset_size);
  s.phase = Phase::Committed;
}

}  // namespace

double default_lambda(int num_arms, int subset_size, std::int64_t horizon, double epoch_constant) {
  const double n = num_arms;
  const double k = subset_size;
  const double t = static_cast<double>(horizon);
  return std::sqrt(2.5 * epoch_constant * n * k * std::log(2.0 * n * t) / t);
}

DartState dart_init(int num_arms, int subset_size, std::int64_t horizon, const DartOptions& options) {
  if (subset_size < 1 || subset_size >= num_arms) {
    throw BanditError(ErrorCode::InvalidDims, "need 1 <= K < N, got N=" + std::to_string(num_arms) +
                                                  " K=" + std::to_string(subset_size));
  }
  if (horizon < 1) throw BanditError(ErrorCode::InvalidDims, "horizon must be >= 1");
  if (!(options.epoch_constant > 0.0)) throw BanditError(ErrorCode::InvalidDims, "epoch constant must be > 0");
  DartState s;
  s.num_arms = num_arms;
  s.subset_size = subset_size;
  s.horizon = horizon;
  s.status.assign(num_arms, ArmStatus::Active);
  s.mu_hat.assign(num_arms, 0.0);
  s.pulls.assign(num_arms, 0);
  s.epoch_constant = options.epoch_constant;
  s.delta = 1.0;
  s.n_threshold = threshold_for(s, s.delta);
  s.lambda = options.lambda.value_or(default_lambda(num_arms, subset_size, horizon, options.epoch_constant));
  return s;
}

EpochPlan plan_epoch(const DartState& state, RandomSource& rng) {
  std::vector<Arm> perm = state.active();
  rng.shuffle(std::span<Arm>(perm));
  return plan_epoch_from_permutation(state, perm);
}

EpochPlan plan_epoch_from_permutation(const DartState& state, std::span<const Arm> permutation) {
  if (state.phase != Phase::Exploring) throw BanditError(ErrorCode::Degenerate, "planning after commitment");
  const int slots = state.open_slots();
  const int m = static_cast<int>(permutation.size());
  if (slots < 1) throw BanditError(ErrorCode::Degenerate, "no open slots (K_e = 0)");
  if (m < slots) throw BanditError(ErrorCode::Degenerate, "fewer active arms than open slots");
  if (m != state.count(ArmStatus::Active)) {
    throw BanditError(ErrorCode::WrongArity, "permutation does not cover the active set");
  }

  EpochPlan plan;
  const int num_groups = (m + slots - 1) / slots;
  plan.groups.reserve(num_groups);
  for (int g = 0; g < num_groups; ++g) {
    Group group;
    group.arms.reserve(slots);
    for (int i = 0; i < slots; ++i) {
      const int pos = g * slots + i;
      group.arms.push_back(permutation[pos % m]);
      group.update_mask.push_back(pos < m);
    }
    plan.groups.push_back(std::move(group));
  }
  return plan;
}

Action compose_action(const DartState& state, const Group& group) {
  std::vector<Arm> arms = state.accepted();
  arms.insert(arms.end(), group.arms.begin(), group.arms.end());
  return make_action(arms, state.num_arms, state.subset_size);
}

void compose_and_observe(DartState& state, const Group& group, double joint_reward) {
  if (state.t >= state.horizon) throw BanditError(ErrorCode::BudgetExhausted, "t has reached T");
  for (std::size_t i = 0; i < group.arms.size(); ++i) {
    if (!group.update_mask[i]) continue;
    const Arm a = group.arms[i];
    const auto n = static_cast<double>(state.pulls[a]);
    state.mu_hat[a] = (n * state.mu_hat[a] + joint_reward) / (n + 1.0);
    ++state.pulls[a];
  }
  ++state.t;
}

void end_epoch(DartState& s) {
  ++s.epoch;
  const std::vector<Arm> ranked = rank_descending(s.mu_hat);
  const int k = s.subset_size;
  const double kth = s.mu_hat[ranked[k - 1]];
  const double next = s.mu_hat[ranked[k]];

  // Candidates in rank order: best first.
  std::vector<Arm> to_accept;
  std::vector<Arm> to_reject;
  for (Arm a : ranked) {
    if (s.status[a] != ArmStatus::Active) continue;
    if (s.mu_hat[a] > next + s.delta) to_accept.push_back(a);
    if (s.mu_hat[a] < kth - s.delta) to_reject.push_back(a);
  }

  // Never accept more than K arms in total.
  const int accept_cap = s.open_slots();
  if (static_cast<int>(to_accept.size()) > accept_cap) to_accept.resize(accept_cap);
  for (Arm a : to_accept) s.status[a] = ArmStatus::Accepted;

  // Never leave fewer than K candidates; drop the lowest-ranked first.
  const int reject_cap = s.count(ArmStatus::Accepted) + s.count(ArmStatus::Active) - k;
  const int rejecting = std::min<int>(reject_cap, static_cast<int>(to_reject.size()));
  for (int i = 0; i < rejecting; ++i) s.status[to_reject[to_reject.size() - 1 - i]] = ArmStatus::Rejected;

  if (static_cast<double>(s.epoch) >= s.n_threshold) {
    s.delta /= 2.0;
    s.n_threshold = threshold_for(s, s.delta);
  }

  const bool only_k_left = s.count(ArmStatus::Accepted) + s.count(ArmStatus::Active) == k;
  if (s.delta < s.lambda || only_k_left || s.open_slots() == 0) commit(s, ranked);
}

std::vector<std::string> invariant_violations(const DartState& s) {
  std::vector<std::string> out;
  const int n = s.num_arms;
  const int k = s.subset_size;
  if (static_cast<int>(s.status.size()) != n || static_cast<int>(s.mu_hat.size()) != n ||
      static_cast<int>(s.pulls.size()) != n) {
    out.push_back("per-arm vectors do not have N entries");
    return out;
  }
  const int accepted = s.count(ArmStatus::Accepted);
  const int active = s.count(ArmStatus::Active);
  const int rejected = s.count(ArmStatus::Rejected);
  if (accepted + active + rejected != n) out.push_back("accept/active/reject do not cover [0, N)");
  if (accepted > k) out.push_back("more than K accepted arms");
  if (s.open_slots() < 0) out.push_back("K_e negative");
  if (s.phase == Phase::Exploring && accepted + active < k) out.push_back("fewer than K candidate arms while exploring");
  int exponent = 0;
  if (!(s.delta > 0.0 && s.delta <= 1.0) || std::frexp(s.delta, &exponent) != 0.5) {
    out.push_back("delta is not a power of two in (0, 1]");
  }
  if (s.n_threshold != threshold_for(s, s.delta)) out.push_back("n_threshold out of sync with delta");
  for (Arm a = 0; a < n; ++a) {
    if (s.pulls[a] < 0) out.push_back("negative pull count for arm " + std::to_string(a));
    if (s.pulls[a] > s.epoch + 1) out.push_back("arm " + std::to_string(a) + " updated more than once per epoch");
  }
  if (s.t > s.horizon) out.push_back("t exceeds T");
  if (s.phase == Phase::Committed) {
    if (!s.committed || static_cast<int>(s.committed->size()) != k) {
      out.push_back("committed action missing or wrong size");
    } else {
      for (Arm a : s.accepted()) {
        if (!s.committed->contains(a)) out.push_back("committed action drops accepted arm " + std::to_string(a));
      }
    }
  }
  return out;
}

namespace {

// Plays one DART instance until its horizon or until `stop` fires, appending to
// `trace`. Returns the final state.
DartState run_instance(const Environment& env, std::int64_t horizon, const DartOptions& options, RandomSource& rng,
                       RegretTrace& trace, const StopPredicate& stop, const EpochObserver& observer) {
  DartState state = dart_init(env.num_arms(), env.subset_size(), horizon, options);
  RandomSource perm_rng = rng.split("dart.permutation");
  RandomSource reward_rng = rng.split("environment");
  auto halted = [&] { return stop && stop(trace.steps()); };

  while (state.phase == Phase::Exploring && state.t < state.horizon) {
    const EpochPlan plan = plan_epoch(state, perm_rng);
    bool finished = true;
    for (const Group& group : plan.groups) {
      if (state.t >= state.horizon || halted()) {
        finished = false;
        break;
      }
      const Action action = compose_action(state, group);
      const RewardSample sample = env.sample(action, reward_rng);
      trace.mu.push_back(env.expected_reward(action));
      compose_and_observe(state, group, sample.joint_reward);
    }
    if (!finished) return state;
    end_epoch(state);
    if (observer) observer(state);
  }

  if (state.phase == Phase::Committed) {
    // Feedback is not used after commitment, so the remaining plays only
    // contribute their expected reward.
    const double mu = env.expected_reward(*state.committed);
    while (state.t < state.horizon && !halted()) {
      trace.mu.push_back(mu);
      ++state.t;
    }
  }
  return state;
}

}  // namespace

DartRun run_dart(const Environment& env, std::int64_t horizon, const DartOptions& options, RandomSource& rng,
                 const EpochObserver& observer) {
  DartRun run;
  run.trace.mu_star = env.best_reward();
  run.trace.mu.reserve(static_cast<std::size_t>(horizon));
  run.state = run_instance(env, horizon, options, rng, run.trace, {}, observer);
  run.trace.final_action = run.state.committed;
  return run;
}

RegretTrace run_dart_anytime(const Environment& env, RandomSource& rng, const StopPredicate& stop,
                             double epoch_constant) {
  RegretTrace trace;
  trace.mu_star = env.best_reward();
  if (!stop) throw BanditError(ErrorCode::Config, "anytime run needs a stopping predicate");
  DartOptions options;
  options.epoch_constant = epoch_constant;
  for (std::uint64_t segment = 0; !stop(trace.steps()); ++segment) {
    const std::int64_t length = std::int64_t{1} << segment;
    RandomSource segment_rng = rng.split(segment);
    DartState state = run_instance(env, length, options, segment_rng, trace, stop, {});
    trace.final_action = state.committed;
    if (state.t == length) trace.segment_ends.push_back(trace.steps());
  }
  return trace;
}

RegretTrace run_dart_anytime(const Environment& env, std::int64_t horizon, RandomSource& rng, double epoch_constant) {
  return run_dart_anytime(
      env, rng, [horizon](std::int64_t steps) { return steps >= horizon; }, epoch_constant);
}

}  // namespace combandit::dart
