#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aplab/certificates.hpp"
#include "aplab/distribution.hpp"
#include "aplab/graph.hpp"
#include "aplab/random.hpp"

namespace aplab {

/// A player. One instance lives for one trial and owns its certificate state.
class Strategy {
 public:
  virtual ~Strategy() = default;

  /// Picks an edge of the presented sample. The engine adds it to g right after.
  virtual Edge choose(const MultiGraph& g, const Sample& x, StepRandom& rng) = 0;

  /// Free-move hook, consulted only by run_free_move and only before the move is spent.
  /// Returning a subset of Supp(D) replaces the presented sample for this step.
  virtual std::optional<Sample> free_move(const MultiGraph& /*g*/, const Sample& /*x*/) { return std::nullopt; }

  virtual Certificate certificate() const { return {}; }

  /// True once the strategy has given up (budget spent); the engine then stops with NotReached.
  virtual bool exhausted() const { return false; }

  /// Named step indices worth reporting (e.g. a phase switch), read once when the run ends.
  virtual std::vector<std::pair<std::string, std::uint64_t>> markers() const { return {}; }
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>(const Distribution&)>;

/// Immutable, shareable factory for per-trial strategy instances.
struct StrategyHandle {
  std::string id;
  bool deterministic = true;
  StrategyFactory create;

  std::unique_ptr<Strategy> make(const Distribution& d) const { return create(d); }
};

}  // namespace aplab
