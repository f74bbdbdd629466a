#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace combandit {

using Arm = int;

/// A set of K distinct arms, stored sorted ascending.
class Action {
 public:
  Action() = default;

  std::span<const Arm> arms() const { return arms_; }
  std::size_t size() const { return arms_.size(); }
  bool contains(Arm arm) const;

  auto begin() const { return arms_.begin(); }
  auto end() const { return arms_.end(); }

  std::string to_string() const;

  friend auto operator<=>(const Action&, const Action&) = default;

 private:
  friend Action make_action(std::span<const Arm>, int, std::optional<int>);
  explicit Action(std::vector<Arm> arms) : arms_(std::move(arms)) {}
  std::vector<Arm> arms_;
};

/// Canonicalizes `indices` into an Action over arms [0, num_arms).
/// Throws BanditError (DuplicateArm, OutOfRange, WrongArity).
Action make_action(std::span<const Arm> indices, int num_arms, std::optional<int> subset_size = std::nullopt);

inline Action make_action(std::initializer_list<Arm> indices, int num_arms,
                          std::optional<int> subset_size = std::nullopt) {
  return make_action(std::span<const Arm>(indices.begin(), indices.size()), num_arms, subset_size);
}

/// Number of K-subsets of N items, saturating at `cap + 1`.
std::uint64_t binomial(int n, int k, std::uint64_t cap = UINT64_MAX - 1);

/// Calls fn(span<const Arm>) for every K-subset of `items` in lexicographic order.
template <class Fn>
void for_each_subset(std::span<const Arm> items, int k, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  std::vector<Arm> subset(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = items[idx[i]];
    fn(std::span<const Arm>(subset));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace combandit
