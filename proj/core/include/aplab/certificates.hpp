#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "aplab/graph.hpp"

namespace aplab {

/// A matching maintained by a strategy, plus the half-built length-3 augmenting paths
/// (square s saturated, circle v unsaturated: record_of(s) == v).
class MatchingState {
 public:
  explicit MatchingState(Vertex n);

  Vertex vertex_count() const noexcept { return n_; }
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool saturated(Vertex v) const { return mate_[v] != 0; }
  std::size_t saturated_count() const noexcept { return n_ - unsaturated_.size(); }
  std::size_t size() const noexcept { return saturated_count() / 2; }
  const std::set<Vertex>& unsaturated() const noexcept { return unsaturated_; }

  /// Matches two unsaturated vertices.
  void match(Vertex a, Vertex b);
  /// Removes the matching edge at a (and its mate).
  void unmatch(Vertex a);
  /// M <- M - (u,w) + (u,v) + (w,v2) for matched (u,w) and unsaturated v, v2.
  void augment(Vertex u, Vertex w, Vertex v, Vertex v2);

  Vertex record_of(Vertex s) const { return record_[s]; }
  void set_record(Vertex s, Vertex v) { record_[s] = v; }
  void clear_record(Vertex s) { record_[s] = 0; }
  /// A record is usable while its target is still unsaturated.
  bool record_valid(Vertex s) const { return record_[s] != 0 && !saturated(record_[s]); }

  std::vector<Edge> edges() const;

  /// Matching edges pairwise disjoint, present in g, and the unsaturated index consistent.
  bool verify(const MultiGraph& g) const;

  static MatchingState from_edges(Vertex n, const std::vector<Edge>& edges);

 private:
  Vertex n_;
  std::vector<Vertex> mate_;
  std::vector<Vertex> record_;
  std::set<Vertex> unsaturated_;
};

/// Vertex-disjoint paths with O(1) endpoint joins and insertions between adjacent vertices.
/// A single vertex is a path with no edges. Vertices outside every path are "off-path".
class PathSystemState {
 public:
  using PathId = std::uint32_t;
  static constexpr PathId kNoPath = 0xffffffffu;

  explicit PathSystemState(Vertex n);

  Vertex vertex_count() const noexcept { return n_; }
  bool contains(Vertex v) const { return path_of_[v] != kNoPath; }
  PathId path_of(Vertex v) const { return path_of_[v]; }
  std::size_t path_vertices(PathId id) const { return members_[id].size(); }
  std::size_t path_edges(PathId id) const { return members_[id].size() - 1; }
  std::pair<Vertex, Vertex> ends(PathId id) const { return ends_[id]; }
  bool is_endpoint(Vertex v) const;
  std::array<Vertex, 2> neighbours(Vertex v) const { return nb_[v]; }
  std::size_t longest_path_edges() const noexcept { return longest_ == 0 ? 0 : longest_ - 1; }
  PathId longest_path() const noexcept { return longest_id_; }
  std::vector<PathId> path_ids() const;

  PathId add_singleton(Vertex v);
  /// Joins two endpoints of distinct paths with the edge (a, b).
  PathId join(Vertex a, Vertex b);
  /// Inserts off-path w between the adjacent path vertices y and z.
  void insert_between(Vertex y, Vertex z, Vertex w);

  /// Vertices of the path from ends(id).first to ends(id).second.
  std::vector<Vertex> order(PathId id) const;

  /// Paths vertex-disjoint, every consecutive pair an edge of g.
  bool verify(const MultiGraph& g) const;

  static PathSystemState from_paths(Vertex n, const std::vector<std::vector<Vertex>>& paths);

 private:
  void link(Vertex a, Vertex b);
  void note_size(PathId id);

  Vertex n_;
  std::vector<std::array<Vertex, 2>> nb_;
  std::vector<PathId> path_of_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::size_t longest_ = 0;
  PathId longest_id_ = kNoPath;
};

/// What a strategy currently certifies. Pointers refer into the strategy's own state and are
/// valid until its next decision.
struct Certificate {
  const MatchingState* matching = nullptr;
  const PathSystemState* paths = nullptr;
  /// With `paths`: the longest path spans [n] and this edge joins its two ends.
  std::optional<Edge> closing_edge;
  /// Image of each vertex of a target subgraph H (index 0 unused), when fully embedded.
  const std::vector<Vertex>* embedding = nullptr;
  const MultiGraph* pattern = nullptr;
};

/// Full structural check of a certificate against the real graph. O(n + m).
bool verify_certificate(const Certificate& cert, const MultiGraph& g);

}  // namespace aplab
