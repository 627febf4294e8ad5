#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aplab/distribution.hpp"
#include "aplab/graph.hpp"
#include "aplab/property.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

struct StepRecord {
  Sample sample;
  Edge chosen;
};

/// One run of the D-process. stopping_time is 0 when the starting graph already satisfies
/// the property, and empty (NotReached) when the run was cut off or the strategy gave up.
struct Trace {
  Vertex n = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::vector<StepRecord> steps;
  MultiGraph final_graph{0};
  std::optional<std::uint64_t> stopping_time;
  std::uint64_t steps_taken = 0;
  bool gave_up = false;
  std::optional<std::uint64_t> free_move_step;
  std::optional<Sample> free_move_subset;
  /// Named step indices a strategy chose to expose (e.g. a phase switch).
  std::vector<std::pair<std::string, std::uint64_t>> markers;
};

struct RunOptions {
  std::uint64_t max_steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  bool record_steps = true;
  /// Re-verify the certificate against the real graph every this many steps (0 = off).
  std::uint64_t verify_every = 0;
  /// Starting graph; empty graph on [n] when absent.
  std::optional<MultiGraph> initial;
};

/// Source of the presented samples X_1, X_2, ...
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual Sample next(std::uint64_t step) = 0;
};

/// Draws X_t from the environment stream of the counter-based generator.
class RandomSource final : public SampleSource {
 public:
  RandomSource(const Distribution& dist, std::uint64_t seed, std::uint64_t trial);
  Sample next(std::uint64_t step) override;

 private:
  const Distribution* dist_;
  CounterRng rng_;
};

/// Replays a fixed sequence of support indices of an explicit distribution.
class ScriptedSource final : public SampleSource {
 public:
  ScriptedSource(const Distribution& dist, std::vector<std::size_t> script);
  Sample next(std::uint64_t step) override;

 private:
  const Distribution* dist_;
  std::vector<std::size_t> script_;
};

/// Core loop shared by every entry point. With allow_free_move the strategy's free_move
/// hook is consulted until it returns a subset once.
Trace run_with(const Distribution& dist, Strategy& strategy, const Property& property, SampleSource& source,
               const RunOptions& opts, bool allow_free_move);

Trace run_process(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                  const RunOptions& opts);
Trace run_free_move(const Distribution& dist, const StrategyHandle& strategy, const Property& property,
                    const RunOptions& opts);

/// Standard strategy that mimics a free-move strategy on a virtual graph: at the free-move
/// step it takes the lowest edge of the real sample, and once the virtual graph satisfies
/// the property it runs the property's replacement procedure for at most its budget.
StrategyHandle convert_free_to_standard(const StrategyHandle& free_strategy, const Property& property);

/// Text trace: one `t center chosen_u chosen_v` line per step (center 0 for edge-list samples).
void write_trace(std::ostream& os, const Trace& trace);

/// Trial-level summary used by the threshold lab and CSV output.
struct TrialRecord {
  std::uint64_t trial = 0;
  std::optional<std::uint64_t> stopping_time;
  std::vector<std::pair<std::string, std::uint64_t>> markers;
};

/// Runs trials 0..count-1 over `workers` threads; results ordered by trial index and
/// independent of the worker count.
std::vector<TrialRecord> run_trials(std::uint64_t count, unsigned workers,
                                    const std::function<TrialRecord(std::uint64_t)>& run_one);

/// Default worker count: APLAB_WORKERS if set and positive, else hardware concurrency.
unsigned default_workers();

}  // namespace aplab
