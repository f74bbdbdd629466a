#include "combandit/trace.hpp"

#include <algorithm>

#include "combandit/error.hpp"

namespace combandit {

std::vector<std::int64_t> checkpoint_times(std::int64_t horizon, std::int64_t stride) {
  if (stride < 1) throw BanditError(ErrorCode::Config, "checkpoint stride must be >= 1");
  std::vector<std::int64_t> times;
  for (std::int64_t t = stride; t <= horizon; t += stride) times.push_back(t);
  if (horizon > 0 && (times.empty() || times.back() != horizon)) times.push_back(horizon);
  return times;
}

std::vector<RegretPoint> cumulative_regret(const RegretTrace& trace, const std::vector<std::int64_t>& checkpoints) {
  std::vector<RegretPoint> out;
  out.reserve(checkpoints.size());
  double total = 0.0;
  std::int64_t t = 0;
  for (std::int64_t c : checkpoints) {
    if (c < t || c > trace.steps()) throw BanditError(ErrorCode::OutOfRange, "checkpoint beyond trace");
    for (; t < c; ++t) {
      // The oracle's own value can exceed mu_star by rounding only; clamp so
      // the series stays monotone.
      total += std::max(0.0, trace.mu_star - trace.mu[t]);
    }
    out.push_back({c, total});
  }
  return out;
}

std::vector<RegretPoint> cumulative_regret(const RegretTrace& trace) {
  return cumulative_regret(trace, checkpoint_times(trace.steps(), std::max<std::int64_t>(1, trace.steps() / 500)));
}

}  // namespace combandit
