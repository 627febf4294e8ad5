#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aplab/certificates.hpp"
#include "aplab/graph.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

/// Greedy: circle = lowest-index minimum-degree vertex other than the square. k only names
/// the target; the rule is the same for every k.
StrategyHandle min_degree_strategy(std::uint32_t k);

/// Extends the matching on unsaturated squares and otherwise builds length-3 augmenting
/// paths: a saturated square s records a round-robin unsaturated circle v; when the partner
/// of s arrives later, it takes a fresh unsaturated circle v' and s-p is swapped for s-v', p-v.
StrategyHandle matching_strategy();

/// Single master path. Off-path squares attach at an endpoint, endpoint squares pull in an
/// off-path vertex, interior squares either complete a recorded two-hit insertion or record a
/// new one. Once the path spans [n], squares at the ends close the cycle directly and a
/// square at p_i closes it by rotation when p_{i-1} was earlier joined to the far end.
StrategyHandle hamilton_strategy();

/// Embeds h vertex by vertex along a degeneracy ordering (see degeneracy_order).
StrategyHandle degenerate_subgraph_strategy(MultiGraph h, std::string id = "subgraph");

/// k blocks of m steps; each block restarts the inner strategy on an empty virtual graph.
/// Gives up after k*m steps.
StrategyHandle multi_round_boost(const StrategyHandle& inner, std::uint64_t m, std::uint64_t k);

/// Blocks needed for failure <= 1 - theta when one block fails with probability <= 1/2:
/// ceil(log2(1 / (1 - theta))).
std::uint64_t boost_rounds(double theta);

enum class CleanupTarget { kMatching, kHamilton };

/// Runs the builder until the approximate certificate holds, then a fresh clean-up fragment.
/// Exposes the marker "cleanup_start" (steps taken before the switch).
StrategyHandle approx_then_cleanup(CleanupTarget target);

/// Matching clean-up fragment started from an arbitrary matching (records are kept).
std::unique_ptr<Strategy> cleanup_matching(const MatchingState& start);

/// Hamilton fragment started from a path; vertices off the path are absorbed, then the cycle closed.
std::unique_ptr<Strategy> cleanup_hamilton(Vertex n, const std::vector<Vertex>& path);

/// Vertex order v_1..v_k from repeated lowest-index min-degree peeling, reversed, with the
/// earlier neighbours of each v_i (ordered by position).
struct DegeneracyOrder {
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> earlier;
  std::uint32_t degeneracy = 0;
};
DegeneracyOrder degeneracy_order(const MultiGraph& h);

}  // namespace aplab
