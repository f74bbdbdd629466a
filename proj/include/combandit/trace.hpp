#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "combandit/action.hpp"

namespace combandit {

/// Exact expected reward of every action played, one entry per time step.
struct RegretTrace {
  double mu_star = 0.0;
  std::vector<double> mu;
  /// The action the policy settled on, if it settled on one.
  std::optional<Action> final_action;
  /// Cumulative step counts at which restart segments ended (anytime runs only).
  std::vector<std::int64_t> segment_ends;

  std::int64_t steps() const { return static_cast<std::int64_t>(mu.size()); }
};

struct RegretPoint {
  std::int64_t t = 0;
  double cumulative_regret = 0.0;
};

/// Checkpoint times stride, 2*stride, ... plus the final step when it is not
/// a multiple of the stride.
std::vector<std::int64_t> checkpoint_times(std::int64_t horizon, std::int64_t stride);

/// Prefix sums of (mu_star - mu_t) read off at `checkpoints` (ascending, <= steps).
std::vector<RegretPoint> cumulative_regret(const RegretTrace& trace, const std::vector<std::int64_t>& checkpoints);

/// Same, with the default stride max(1, T / 500).
std::vector<RegretPoint> cumulative_regret(const RegretTrace& trace);

}  // namespace combandit
