#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aplab/certificates.hpp"
#include "aplab/graph.hpp"
#include "aplab/strategy.hpp"

namespace aplab {

/// Largest n accepted by the exhaustive matching / Hamiltonicity / longest-path searches.
inline constexpr Vertex kExhaustiveLimit = 12;
/// Largest pattern accepted by the subgraph search.
inline constexpr Vertex kPatternLimit = 8;

/// ceil(n^0.99): vertices a near-perfect matching may leave unsaturated.
std::uint64_t approx_slack(Vertex n);
/// n - ceil(n^0.99), floored at 0: target length of a near-spanning path.
std::uint64_t approx_path_length(Vertex n);

// Direct checkers. Exhaustive ones throw LimitExceeded above their size limit.

bool check_min_degree_k(const MultiGraph& g, std::uint32_t k);
/// Saturates n vertices (n even) or n - 1 (n odd).
bool check_perfect_matching(const MultiGraph& g);
/// Maximum matching size by exhaustive search (n <= kExhaustiveLimit).
std::size_t max_matching_size(const MultiGraph& g);
/// A Hamiltonian cycle exists; false for n <= 2.
bool check_hamiltonian(const MultiGraph& g);
/// Edge count of a longest path (n <= kExhaustiveLimit).
std::size_t longest_path_edges(const MultiGraph& g);
/// Certificate form: matching must be valid in g (UsageError otherwise).
bool check_approx_matching(const MultiGraph& g, std::span<const Edge> matching);
/// Certificate form: the vertex sequence must be a path of g (UsageError otherwise).
bool check_approx_path(const MultiGraph& g, std::span<const Vertex> path);
/// Subgraph containment by backtracking; h may have at most kPatternLimit vertices.
bool check_contains_subgraph(const MultiGraph& g, const MultiGraph& h);
/// Some copy of h containing the edge e of g, or nullopt. Image indexed by h vertex.
std::optional<std::vector<Vertex>> find_subgraph_through(const MultiGraph& g, const MultiGraph& h, const Edge& e);

/// Incremental property tracker for one run.
class Monitor {
 public:
  virtual ~Monitor() = default;
  /// Called once with `added` empty for the starting graph, then after every added edge.
  /// Returns whether g now satisfies the property.
  virtual bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate& cert) = 0;
};

/// A strategy fragment that restores the property after one edge went missing.
struct ReplacementSpec {
  std::function<std::uint64_t(Vertex n)> budget;
  /// g: the real graph (lacks `missing`); cert: certificate that held on g + missing.
  std::function<std::unique_ptr<Strategy>(const MultiGraph& g, const Edge& missing, const Certificate& cert)> start;
};

/// A monotone increasing graph property. Immutable and shareable across workers.
struct Property {
  std::string id;
  std::function<bool(const MultiGraph&)> check;
  std::function<std::unique_ptr<Monitor>()> make_monitor;
  std::optional<ReplacementSpec> replacement;
};

Property min_degree_property(std::uint32_t k);
Property perfect_matching_property();
Property hamiltonian_property();
Property approx_matching_property();
Property approx_path_property();
Property subgraph_property(MultiGraph h, std::string id = "subgraph");
/// Contains a fixed edge; replacement waits for a sample containing it.
Property contains_edge_property(Edge e, std::uint64_t replacement_budget = 3);
/// Contains one of the listed edge sets (a generic upset on tiny instances). No replacement.
Property upset_property(std::vector<std::vector<Edge>> minimal_sets, std::string id = "upset");
Property always_true_property();

/// Standalone replacement fragments, also reachable through Property::replacement.
std::unique_ptr<Strategy> replace_matching_edge(const MultiGraph& g, const Edge& missing, const MatchingState& cert);
std::unique_ptr<Strategy> replace_path_edge(const MultiGraph& g, const Edge& missing, const PathSystemState& cert);
std::unique_ptr<Strategy> replace_min_degree_edge(const MultiGraph& g, std::uint32_t k);

}  // namespace aplab
