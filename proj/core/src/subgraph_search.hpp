#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "aplab/graph.hpp"

namespace aplab::detail {

inline std::uint64_t edge_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Simple-graph view kept in sync with a growing multigraph.
struct SimpleView {
  explicit SimpleView(Vertex n) : adj(static_cast<std::size_t>(n) + 1) {}
  explicit SimpleView(const MultiGraph& g);

  /// Returns true when e is new as a simple edge.
  bool add(const Edge& e);
  bool has(Vertex a, Vertex b) const { return keys.contains(edge_key(a, b)); }
  Vertex vertex_count() const { return static_cast<Vertex>(adj.size() - 1); }

  std::vector<std::vector<Vertex>> adj;
  std::unordered_set<std::uint64_t> keys;
};

/// Backtracking embedder for a small pattern h into a simple view of g.
class SubgraphSearch {
 public:
  explicit SubgraphSearch(const MultiGraph& h);

  Vertex pattern_size() const { return k_; }

  /// Any embedding; image indexed by pattern vertex (index 0 unused).
  std::optional<std::vector<Vertex>> find_any(const SimpleView& g) const;
  /// An embedding mapping some pattern edge onto e.
  std::optional<std::vector<Vertex>> find_through(const SimpleView& g, const Edge& e) const;

 private:
  bool extend(const SimpleView& g, std::vector<Vertex>& img, std::unordered_set<Vertex>& used,
              std::size_t mapped) const;
  bool finish_isolated(const SimpleView& g, std::vector<Vertex>& img, std::unordered_set<Vertex>& used) const;

  Vertex k_;
  std::vector<std::vector<Vertex>> hadj_;
  std::vector<Edge> hedges_;
  std::size_t non_isolated_ = 0;
};

}  // namespace aplab::detail
