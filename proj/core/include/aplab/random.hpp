#pragma once

#include <cstdint>

namespace aplab {

/// Sub-stream identifiers. Environment randomness (the presented samples) and strategy
/// randomness never share words, so swapping strategies leaves the sample sequence intact.
enum class Stream : std::uint64_t {
  kEnvironment = 0,
  kStrategy = 1,
  kAuxiliary = 2,
};

/// SplitMix64 finalizer applied to z + 0x9e3779b97f4a7c15.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based generator keyed by (seed, stream, trial). Every word is a pure function
/// of (seed, stream, trial, step, lane):
///
///   key  = mix64(mix64(mix64(seed) + stream) + trial)
///   word = mix64(mix64(key + step) + lane)
///
/// Trials are therefore independent of scheduling and worker count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, Stream stream, std::uint64_t trial) noexcept;

  std::uint64_t word(std::uint64_t step, std::uint64_t lane) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t trial() const noexcept { return trial_; }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t key_;
};

/// Cursor over the words of one step. Lanes are consumed in order 0, 1, 2, ...
class StepRandom {
 public:
  StepRandom(const CounterRng& rng, std::uint64_t step) noexcept : rng_(&rng), step_(step) {}

  std::uint64_t next_word() noexcept { return rng_->word(step_, lane_++); }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection; each
  /// rejected draw consumes one more lane. bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) from the top 53 bits of one word.
  double unit() noexcept;

  std::uint64_t lanes_used() const noexcept { return lane_; }

 private:
  const CounterRng* rng_;
  std::uint64_t step_;
  std::uint64_t lane_ = 0;
};

}  // namespace aplab
