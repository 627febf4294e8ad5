#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "aplab/errors.hpp"
#include "aplab/property.hpp"
#include "subgraph_search.hpp"

namespace aplab {

namespace detail {

SimpleView::SimpleView(const MultiGraph& g) : adj(static_cast<std::size_t>(g.vertex_count()) + 1) {
  for (const Edge& e : g.edges()) add(e);
}

bool SimpleView::add(const Edge& e) {
  if (!keys.insert(edge_key(e.u, e.v)).second) return false;
  adj[e.u].push_back(e.v);
  adj[e.v].push_back(e.u);
  return true;
}

SubgraphSearch::SubgraphSearch(const MultiGraph& h) : k_(h.vertex_count()), hadj_(static_cast<std::size_t>(h.vertex_count()) + 1) {
  if (k_ > kPatternLimit) {
    throw LimitExceeded("pattern has " + std::to_string(k_) + " vertices; limit is " + std::to_string(kPatternLimit));
  }
  SimpleView hv(h);
  hadj_ = hv.adj;
  for (Vertex v = 1; v <= k_; ++v) {
    std::sort(hadj_[v].begin(), hadj_[v].end());
    if (!hadj_[v].empty()) ++non_isolated_;
    for (Vertex w : hadj_[v]) {
      if (v < w) hedges_.emplace_back(v, w);
    }
  }
}

bool SubgraphSearch::finish_isolated(const SimpleView& g, std::vector<Vertex>& img, std::unordered_set<Vertex>& used) const {
  Vertex next = 1;
  for (Vertex h = 1; h <= k_; ++h) {
    if (!hadj_[h].empty()) continue;
    while (next <= g.vertex_count() && used.contains(next)) ++next;
    if (next > g.vertex_count()) return false;
    img[h] = next;
    used.insert(next);
  }
  return true;
}

bool SubgraphSearch::extend(const SimpleView& g, std::vector<Vertex>& img, std::unordered_set<Vertex>& used,
                            std::size_t mapped) const {
  if (mapped == non_isolated_) return finish_isolated(g, img, used);
  // Next pattern vertex: the unmapped non-isolated one with most mapped neighbours.
  Vertex pick = 0;
  int best = -1;
  for (Vertex h = 1; h <= k_; ++h) {
    if (img[h] != 0 || hadj_[h].empty()) continue;
    int score = 0;
    for (Vertex w : hadj_[h]) score += img[w] != 0;
    if (score > best) {
      best = score;
      pick = h;
    }
  }
  auto try_candidate = [&](Vertex c) {
    if (used.contains(c)) return false;
    for (Vertex w : hadj_[pick]) {
      if (img[w] != 0 && !g.has(img[w], c)) return false;
    }
    img[pick] = c;
    used.insert(c);
    if (extend(g, img, used, mapped + 1)) return true;
    used.erase(c);
    img[pick] = 0;
    return false;
  };
  if (best > 0) {
    Vertex anchor = 0;
    for (Vertex w : hadj_[pick]) {
      if (img[w] != 0 && (anchor == 0 || g.adj[img[w]].size() < g.adj[anchor].size())) anchor = img[w];
    }
    for (Vertex c : g.adj[anchor]) {
      if (try_candidate(c)) return true;
    }
    return false;
  }
  for (Vertex c = 1; c <= g.vertex_count(); ++c) {
    if (!g.adj[c].empty() && try_candidate(c)) return true;
  }
  return false;
}

std::optional<std::vector<Vertex>> SubgraphSearch::find_any(const SimpleView& g) const {
  if (g.vertex_count() < k_) return std::nullopt;
  std::vector<Vertex> img(static_cast<std::size_t>(k_) + 1, 0);
  std::unordered_set<Vertex> used;
  if (extend(g, img, used, 0)) return img;
  return std::nullopt;
}

std::optional<std::vector<Vertex>> SubgraphSearch::find_through(const SimpleView& g, const Edge& e) const {
  if (g.vertex_count() < k_) return std::nullopt;
  for (const Edge& he : hedges_) {
    for (int flip = 0; flip < 2; ++flip) {
      std::vector<Vertex> img(static_cast<std::size_t>(k_) + 1, 0);
      img[he.u] = flip ? e.v : e.u;
      img[he.v] = flip ? e.u : e.v;
      std::unordered_set<Vertex> used{e.u, e.v};
      if (extend(g, img, used, 2)) return img;
    }
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

void require_exhaustive(const MultiGraph& g, const char* what) {
  if (g.vertex_count() > kExhaustiveLimit) {
    throw LimitExceeded(std::string(what) + ": exhaustive search limited to n <= " + std::to_string(kExhaustiveLimit) +
                        ", got n = " + std::to_string(g.vertex_count()));
  }
}

/// Adjacency bitmasks over 0-based vertices.
std::vector<std::uint32_t> masks(const MultiGraph& g) {
  std::vector<std::uint32_t> adj(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u - 1] |= 1u << (e.v - 1);
    adj[e.v - 1] |= 1u << (e.u - 1);
  }
  return adj;
}

}  // namespace

std::uint64_t approx_slack(Vertex n) {
  if (n == 0) return 0;
  return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<long double>(n), 0.99L)));
}

std::uint64_t approx_path_length(Vertex n) {
  const auto slack = approx_slack(n);
  return slack >= n ? 0 : n - slack;
}

bool check_min_degree_k(const MultiGraph& g, std::uint32_t k) {
  if (k < 1) throw UsageError("min-degree property needs k >= 1");
  if (g.vertex_count() == 0) return true;
  return g.min_degree() >= k;
}

std::size_t max_matching_size(const MultiGraph& g) {
  require_exhaustive(g, "maximum matching");
  const auto adj = masks(g);
  const std::uint32_t full = (1u << g.vertex_count()) - 1;
  std::vector<int> memo(static_cast<std::size_t>(full) + 1, -1);
  std::function<int(std::uint32_t)> best = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    int& slot = memo[mask];
    if (slot >= 0) return slot;
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    int result = best(rest);
    for (std::uint32_t cand = adj[v] & rest; cand != 0; cand &= cand - 1) {
      const int w = std::countr_zero(cand);
      result = std::max(result, 1 + best(rest & ~(1u << w)));
    }
    return slot = result;
  };
  return static_cast<std::size_t>(best(full));
}

bool check_perfect_matching(const MultiGraph& g) {
  return 2 * max_matching_size(g) >= g.vertex_count() - g.vertex_count() % 2;
}

bool check_hamiltonian(const MultiGraph& g) {
  require_exhaustive(g, "Hamiltonicity");
  const Vertex n = g.vertex_count();
  if (n < 3) return false;
  const auto adj = masks(g);
  const std::uint32_t full = (1u << n) - 1;
  // reach[mask] = bitset of end vertices of paths from vertex 0 covering mask.
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(full) + 1, 0);
  reach[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask & 1) || reach[mask] == 0) continue;
    for (std::uint32_t ends = reach[mask]; ends != 0; ends &= ends - 1) {
      const int v = std::countr_zero(ends);
      for (std::uint32_t nxt = adj[v] & ~mask; nxt != 0; nxt &= nxt - 1) {
        const int w = std::countr_zero(nxt);
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return (reach[full] & adj[0]) != 0;
}

std::size_t longest_path_edges(const MultiGraph& g) {
  require_exhaustive(g, "longest path");
  const Vertex n = g.vertex_count();
  if (n == 0) return 0;
  const auto adj = masks(g);
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(full) + 1, 0);
  for (Vertex v = 0; v < n; ++v) reach[1u << v] = 1u << v;
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (reach[mask] == 0) continue;
    best = std::max<std::size_t>(best, std::popcount(mask) - 1);
    for (std::uint32_t ends = reach[mask]; ends != 0; ends &= ends - 1) {
      const int v = std::countr_zero(ends);
      for (std::uint32_t nxt = adj[v] & ~mask; nxt != 0; nxt &= nxt - 1) {
        const int w = std::countr_zero(nxt);
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return best;
}

bool check_approx_matching(const MultiGraph& g, std::span<const Edge> matching) {
  const detail::SimpleView view(g);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (const Edge& e : matching) {
    if (e.v > g.vertex_count() || !view.has(e.u, e.v)) throw UsageError("matching certificate contains a non-edge");
    if (seen[e.u] || seen[e.v]) throw UsageError("matching certificate edges are not disjoint");
    seen[e.u] = seen[e.v] = 1;
  }
  const std::uint64_t unsaturated = g.vertex_count() - 2 * matching.size();
  return unsaturated <= approx_slack(g.vertex_count());
}

bool check_approx_path(const MultiGraph& g, std::span<const Vertex> path) {
  const detail::SimpleView view(g);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Vertex v = path[i];
    if (v < 1 || v > g.vertex_count() || seen[v]) throw UsageError("path certificate repeats or leaves [n]");
    seen[v] = 1;
    if (i > 0 && !view.has(path[i - 1], v)) throw UsageError("path certificate contains a non-edge");
  }
  const std::uint64_t length = path.empty() ? 0 : path.size() - 1;
  return length >= approx_path_length(g.vertex_count());
}

bool check_contains_subgraph(const MultiGraph& g, const MultiGraph& h) {
  const detail::SubgraphSearch search(h);
  return search.find_any(detail::SimpleView(g)).has_value();
}

std::optional<std::vector<Vertex>> find_subgraph_through(const MultiGraph& g, const MultiGraph& h, const Edge& e) {
  const detail::SubgraphSearch search(h);
  const detail::SimpleView view(g);
  if (!view.has(e.u, e.v)) return std::nullopt;
  return search.find_through(view, e);
}

}  // namespace aplab
