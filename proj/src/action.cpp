#include "combandit/action.hpp"

#include <algorithm>
#include <cstdint>

#include "combandit/error.hpp"

namespace combandit {

bool Action::contains(Arm arm) const { return std::binary_search(arms_.begin(), arms_.end(), arm); }

std::string Action::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(arms_[i]);
  }
  return out + "]";
}

Action make_action(std::span<const Arm> indices, int num_arms, std::optional<int> subset_size) {
  if (subset_size && static_cast<int>(indices.size()) != *subset_size) {
    throw BanditError(ErrorCode::WrongArity, "expected " + std::to_string(*subset_size) + " arms, got " +
                                                 std::to_string(indices.size()));
  }
  std::vector<Arm> arms(indices.begin(), indices.end());
  for (Arm a : arms) {
    if (a < 0 || a >= num_arms) {
      throw BanditError(ErrorCode::OutOfRange,
                        "arm " + std::to_string(a) + " outside [0, " + std::to_string(num_arms) + ")");
    }
  }
  std::sort(arms.begin(), arms.end());
  if (auto dup = std::adjacent_find(arms.begin(), arms.end()); dup != arms.end()) {
    throw BanditError(ErrorCode::DuplicateArm, "arm " + std::to_string(*dup) + " repeated");
  }
  return Action(std::move(arms));
}

std::uint64_t binomial(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    unsigned __int128 next = static_cast<unsigned __int128>(result) * static_cast<unsigned>(n - k + i) / i;
    if (next > cap) return cap + 1;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

}  // namespace combandit
