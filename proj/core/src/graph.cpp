#include "aplab/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "aplab/errors.hpp"

namespace aplab {

Edge::Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
  if (a == b) throw UsageError("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ") rejected");
  if (u == 0) throw UsageError("vertex ids start at 1");
}

std::ostream& operator<<(std::ostream& os, const Edge& e) { return os << '(' << e.u << ',' << e.v << ')'; }

MultiGraph::MultiGraph(Vertex n) : n_(n), degree_(static_cast<std::size_t>(n) + 1, 0) {}

void MultiGraph::add_edge(const Edge& e) {
  if (e.u < 1 || e.v > n_ || e.u == e.v) {
    throw UsageError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") outside 1.." + std::to_string(n_));
  }
  edges_.push_back(e);
  ++degree_[e.u];
  ++degree_[e.v];
}

std::uint32_t MultiGraph::min_degree() const {
  if (n_ == 0) throw UsageError("min_degree of an empty vertex set");
  return *std::min_element(degree_.begin() + 1, degree_.end());
}

Vertex MultiGraph::argmin_degree(std::optional<Vertex> exclude) const {
  Vertex best = 0;
  std::uint32_t best_degree = std::numeric_limits<std::uint32_t>::max();
  for (Vertex v = 1; v <= n_; ++v) {
    if (exclude && *exclude == v) continue;
    if (degree_[v] < best_degree) {
      best = v;
      best_degree = degree_[v];
    }
  }
  if (best == 0) throw UsageError("argmin_degree: no eligible vertex");
  return best;
}

std::size_t MultiGraph::multiplicity(const Edge& e) const {
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), e));
}

std::vector<std::vector<Vertex>> MultiGraph::simple_adjacency() const {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_) + 1);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

MultiGraph MultiGraph::without_edge(const Edge& e) const {
  MultiGraph out(n_);
  bool removed = false;
  for (const Edge& f : edges_) {
    if (!removed && f == e) {
      removed = true;
      continue;
    }
    out.add_edge(f);
  }
  if (!removed) throw UsageError("without_edge: edge not present");
  return out;
}

void write_edge_list(std::ostream& os, const MultiGraph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

MultiGraph read_edge_list(std::istream& is) {
  long long n = -1;
  long long m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0 || n > std::numeric_limits<Vertex>::max()) {
    throw DataError("edge list: bad header, expected 'n m'");
  }
  MultiGraph g(static_cast<Vertex>(n));
  for (long long i = 0; i < m; ++i) {
    long long a = 0;
    long long b = 0;
    if (!(is >> a >> b)) throw DataError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (a < 1 || b < 1 || a > n || b > n || a == b) {
      throw DataError("edge list: invalid edge " + std::to_string(a) + " " + std::to_string(b));
    }
    g.add_edge(Edge(static_cast<Vertex>(a), static_cast<Vertex>(b)));
  }
  std::string rest;
  if (is >> rest) throw DataError("edge list: trailing data '" + rest + "'");
  return g;
}

MinDegreeTracker::MinDegreeTracker(Vertex n)
    : n_(n), degree_(static_cast<std::size_t>(n) + 1, 0), count_at_(8, 0) {
  count_at_[0] = n;
}

void MinDegreeTracker::increment(Vertex v) {
  const std::uint32_t d = degree_[v]++;
  if (d + 1 >= count_at_.size()) count_at_.resize(count_at_.size() * 2, 0);
  --count_at_[d];
  ++count_at_[d + 1];
  if (d == min_ && count_at_[min_] == 0) {
    ++min_;
    cursor_ = 1;
  }
}

Vertex MinDegreeTracker::argmin(std::optional<Vertex> exclude) {
  while (degree_[cursor_] != min_) ++cursor_;
  if (!exclude || *exclude != cursor_) return cursor_;
  if (count_at_[min_] > 1) {
    Vertex v = cursor_ + 1;
    while (degree_[v] != min_) ++v;
    return v;
  }
  // The excluded vertex is the only one at the minimum level.
  std::uint32_t level = min_ + 1;
  while (level < count_at_.size() && count_at_[level] == 0) ++level;
  if (level >= count_at_.size()) throw UsageError("argmin: no eligible vertex");
  for (Vertex v = 1; v <= n_; ++v) {
    if (v != *exclude && degree_[v] == level) return v;
  }
  throw UsageError("argmin: no eligible vertex");
}

}  // namespace aplab
