#include "aplab/random.hpp"

namespace aplab {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, Stream stream, std::uint64_t trial) noexcept
    : seed_(seed), trial_(trial), key_(mix64(mix64(mix64(seed) + static_cast<std::uint64_t>(stream)) + trial)) {}

std::uint64_t CounterRng::word(std::uint64_t step, std::uint64_t lane) const noexcept {
  return mix64(mix64(key_ + step) + lane);
}

std::uint64_t StepRandom::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next_word()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_word()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double StepRandom::unit() noexcept {
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

}  // namespace aplab
