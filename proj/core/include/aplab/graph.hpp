#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace aplab {

/// Vertices are numbered 1..n.
using Vertex = std::uint32_t;

/// Unordered pair of distinct vertices. Stored normalized with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b);

  bool touches(Vertex x) const noexcept { return u == x || v == x; }
  Vertex other(Vertex x) const noexcept { return u == x ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

/// Loopless multigraph on [n] with degrees counted with multiplicity. Edges are only ever added.
class MultiGraph {
 public:
  explicit MultiGraph(Vertex n);

  Vertex vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::uint32_t degree(Vertex v) const { return degree_.at(v); }
  std::span<const std::uint32_t> degrees() const noexcept { return {degree_.data() + 1, n_}; }

  /// Throws UsageError when an endpoint lies outside 1..n.
  void add_edge(const Edge& e);

  std::uint32_t min_degree() const;

  /// Lowest-index vertex of minimum degree, skipping `exclude`. O(n) scan.
  Vertex argmin_degree(std::optional<Vertex> exclude = std::nullopt) const;

  /// Number of copies of e.
  std::size_t multiplicity(const Edge& e) const;

  /// Simple-graph view: sorted, de-duplicated neighbour lists indexed 1..n.
  std::vector<std::vector<Vertex>> simple_adjacency() const;

  /// Copy without one occurrence of e. Throws UsageError if e is absent.
  MultiGraph without_edge(const Edge& e) const;

 private:
  Vertex n_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
};

/// Edge-list text: header "n m", then one "u v" per line.
void write_edge_list(std::ostream& os, const MultiGraph& g);
MultiGraph read_edge_list(std::istream& is);

/// Incremental minimum-degree index over a degree table that only grows. Answers
/// argmin queries with the same lowest-index tie-break as MultiGraph::argmin_degree in
/// amortized O(1).
class MinDegreeTracker {
 public:
  explicit MinDegreeTracker(Vertex n);

  void increment(Vertex v);
  std::uint32_t degree(Vertex v) const { return degree_[v]; }
  std::uint32_t min_degree() const noexcept { return min_; }
  Vertex argmin(std::optional<Vertex> exclude = std::nullopt);

 private:
  Vertex n_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> count_at_;
  std::uint32_t min_ = 0;
  Vertex cursor_ = 1;  // every vertex below cursor_ has degree > min_
};

}  // namespace aplab
