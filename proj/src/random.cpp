#include "combandit/random.hpp"

#include <cmath>
#include <numbers>

namespace combandit {

double RandomSource::normal() {
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  // Rejection on the top of the range removes modulo bias.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x > limit);
  return x % bound;
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t run) {
  return RandomSource::mix(RandomSource::mix(master_seed) ^ RandomSource::mix(run + 0x632BE59BD9B4E019ULL));
}

}  // namespace combandit
