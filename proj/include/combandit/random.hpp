#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace combandit {

/// Counter-based generator: the n-th output is a pure function of (key, n).
///
/// Child streams are derived from the key and a purpose tag only, so a
/// stream's contents never depend on how many draws its parent has made.
/// Satisfies UniformRandomBitGenerator.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + mix(counter_++ + kCounterSalt)); }

  RandomSource split(std::uint64_t tag) const { return RandomSource(Key{mix(key_ ^ mix(tag + kSplitSalt))}); }
  RandomSource split(std::string_view tag) const { return split(tag_hash(tag)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal draw (Box-Muller, consumes exactly two outputs).
  double normal();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  /// splitmix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// FNV-1a; stable across platforms, used for purpose tags.
  static constexpr std::uint64_t tag_hash(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    return h;
  }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit RandomSource(Key k) : key_(k.value) {}

  static constexpr std::uint64_t kSeedSalt = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kCounterSalt = 0xD1B54A32D192ED03ULL;
  static constexpr std::uint64_t kSplitSalt = 0x8CB92BA72F3D8DD7ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for replication `run` of an experiment with the given master seed.
std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t run);

}  // namespace combandit
