#include "aplab/certificates.hpp"

#include <algorithm>
#include <unordered_set>

#include "aplab/errors.hpp"

namespace aplab {

namespace {

std::uint64_t edge_key(const Edge& e) { return (static_cast<std::uint64_t>(e.u) << 32) | e.v; }

std::unordered_set<std::uint64_t> edge_keys(const MultiGraph& g) {
  std::unordered_set<std::uint64_t> keys;
  keys.reserve(g.edge_count() * 2);
  for (const Edge& e : g.edges()) keys.insert(edge_key(e));
  return keys;
}

}  // namespace

MatchingState::MatchingState(Vertex n)
    : n_(n), mate_(static_cast<std::size_t>(n) + 1, 0), record_(static_cast<std::size_t>(n) + 1, 0) {
  for (Vertex v = 1; v <= n; ++v) unsaturated_.insert(unsaturated_.end(), v);
}

void MatchingState::match(Vertex a, Vertex b) {
  if (a == b || saturated(a) || saturated(b)) throw ContractViolation("match: endpoints must be distinct and unsaturated");
  mate_[a] = b;
  mate_[b] = a;
  unsaturated_.erase(a);
  unsaturated_.erase(b);
}

void MatchingState::unmatch(Vertex a) {
  const Vertex b = mate_[a];
  if (b == 0) throw ContractViolation("unmatch: vertex is unsaturated");
  mate_[a] = 0;
  mate_[b] = 0;
  unsaturated_.insert(a);
  unsaturated_.insert(b);
}

void MatchingState::augment(Vertex u, Vertex w, Vertex v, Vertex v2) {
  if (mate_[u] != w || saturated(v) || saturated(v2) || v == v2) {
    throw ContractViolation("augment: not a length-3 augmenting path");
  }
  mate_[u] = v;
  mate_[v] = u;
  mate_[w] = v2;
  mate_[v2] = w;
  unsaturated_.erase(v);
  unsaturated_.erase(v2);
}

std::vector<Edge> MatchingState::edges() const {
  std::vector<Edge> out;
  for (Vertex v = 1; v <= n_; ++v) {
    if (mate_[v] > v) out.emplace_back(v, mate_[v]);
  }
  return out;
}

bool MatchingState::verify(const MultiGraph& g) const {
  if (g.vertex_count() != n_) return false;
  const auto keys = edge_keys(g);
  std::size_t unsat = 0;
  for (Vertex v = 1; v <= n_; ++v) {
    const Vertex m = mate_[v];
    if (m == 0) {
      ++unsat;
      if (!unsaturated_.contains(v)) return false;
      continue;
    }
    if (m == v || m > n_ || mate_[m] != v) return false;
    if (unsaturated_.contains(v)) return false;
    if (!keys.contains(edge_key(Edge(v, m)))) return false;
  }
  return unsat == unsaturated_.size();
}

MatchingState MatchingState::from_edges(Vertex n, const std::vector<Edge>& edges) {
  MatchingState m(n);
  for (const Edge& e : edges) m.match(e.u, e.v);
  return m;
}

PathSystemState::PathSystemState(Vertex n)
    : n_(n), nb_(static_cast<std::size_t>(n) + 1, {0, 0}), path_of_(static_cast<std::size_t>(n) + 1, kNoPath) {}

bool PathSystemState::is_endpoint(Vertex v) const {
  if (!contains(v)) return false;
  const auto [a, b] = ends_[path_of_[v]];
  return v == a || v == b;
}

std::vector<PathSystemState::PathId> PathSystemState::path_ids() const {
  std::vector<PathId> ids;
  for (PathId id = 0; id < members_.size(); ++id) {
    if (!members_[id].empty()) ids.push_back(id);
  }
  return ids;
}

void PathSystemState::note_size(PathId id) {
  if (members_[id].size() > longest_ || longest_id_ == kNoPath || members_[longest_id_].empty()) {
    if (members_[id].size() >= longest_ || longest_id_ == kNoPath || members_[longest_id_].empty()) {
      longest_ = members_[id].size();
      longest_id_ = id;
    }
  }
}

PathSystemState::PathId PathSystemState::add_singleton(Vertex v) {
  if (contains(v)) throw ContractViolation("add_singleton: vertex already on a path");
  const auto id = static_cast<PathId>(members_.size());
  members_.push_back({v});
  ends_.emplace_back(v, v);
  path_of_[v] = id;
  note_size(id);
  return id;
}

void PathSystemState::link(Vertex a, Vertex b) {
  auto attach = [](std::array<Vertex, 2>& slots, Vertex x) {
    if (slots[0] == 0) {
      slots[0] = x;
    } else if (slots[1] == 0) {
      slots[1] = x;
    } else {
      throw ContractViolation("path vertex already has two neighbours");
    }
  };
  attach(nb_[a], b);
  attach(nb_[b], a);
}

PathSystemState::PathId PathSystemState::join(Vertex a, Vertex b) {
  if (!is_endpoint(a) || !is_endpoint(b)) throw ContractViolation("join: both vertices must be endpoints");
  PathId pa = path_of_[a];
  PathId pb = path_of_[b];
  if (pa == pb) throw ContractViolation("join: endpoints of the same path would close a cycle");
  const Vertex far_a = ends_[pa].first == a ? ends_[pa].second : ends_[pa].first;
  const Vertex far_b = ends_[pb].first == b ? ends_[pb].second : ends_[pb].first;
  link(a, b);
  if (members_[pa].size() < members_[pb].size()) std::swap(pa, pb);
  for (Vertex v : members_[pb]) path_of_[v] = pa;
  members_[pa].insert(members_[pa].end(), members_[pb].begin(), members_[pb].end());
  members_[pb].clear();
  members_[pb].shrink_to_fit();
  ends_[pa] = {far_a, far_b};
  if (longest_id_ == pb) longest_id_ = pa;
  note_size(pa);
  return pa;
}

void PathSystemState::insert_between(Vertex y, Vertex z, Vertex w) {
  if (contains(w)) throw ContractViolation("insert_between: vertex already on a path");
  auto& ny = nb_[y];
  auto& nz = nb_[z];
  const int iy = ny[0] == z ? 0 : (ny[1] == z ? 1 : -1);
  const int iz = nz[0] == y ? 0 : (nz[1] == y ? 1 : -1);
  if (iy < 0 || iz < 0) throw ContractViolation("insert_between: vertices are not adjacent on a path");
  ny[iy] = w;
  nz[iz] = w;
  nb_[w] = {y, z};
  const PathId id = path_of_[y];
  path_of_[w] = id;
  members_[id].push_back(w);
  note_size(id);
}

std::vector<Vertex> PathSystemState::order(PathId id) const {
  std::vector<Vertex> out;
  out.reserve(members_[id].size());
  Vertex prev = 0;
  Vertex cur = ends_[id].first;
  while (cur != 0) {
    out.push_back(cur);
    const Vertex next = nb_[cur][0] != prev ? nb_[cur][0] : nb_[cur][1];
    prev = cur;
    cur = (next == prev) ? 0 : next;
    if (out.size() > members_[id].size()) throw ContractViolation("path order: cycle detected");
  }
  return out;
}

bool PathSystemState::verify(const MultiGraph& g) const {
  if (g.vertex_count() != n_) return false;
  const auto keys = edge_keys(g);
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  for (PathId id : path_ids()) {
    const auto walk = order(id);
    if (walk.size() != members_[id].size()) return false;
    if (walk.back() != ends_[id].second) return false;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (seen[walk[i]] || path_of_[walk[i]] != id) return false;
      seen[walk[i]] = 1;
      if (i > 0 && !keys.contains(edge_key(Edge(walk[i - 1], walk[i])))) return false;
    }
  }
  return true;
}

PathSystemState PathSystemState::from_paths(Vertex n, const std::vector<std::vector<Vertex>>& paths) {
  PathSystemState s(n);
  for (const auto& p : paths) {
    if (p.empty()) continue;
    s.add_singleton(p.front());
    for (std::size_t i = 1; i < p.size(); ++i) {
      s.add_singleton(p[i]);
      s.join(p[i - 1], p[i]);
    }
  }
  return s;
}

bool verify_certificate(const Certificate& cert, const MultiGraph& g) {
  if (cert.matching && !cert.matching->verify(g)) return false;
  if (cert.paths) {
    if (!cert.paths->verify(g)) return false;
    if (cert.closing_edge) {
      const auto id = cert.paths->longest_path();
      if (id == PathSystemState::kNoPath || cert.paths->path_vertices(id) != g.vertex_count()) return false;
      const auto [a, b] = cert.paths->ends(id);
      if (a == b || Edge(a, b) != *cert.closing_edge || g.multiplicity(*cert.closing_edge) == 0) return false;
      // A 2-path plus its own edge is not a cycle; the closing edge must be a second copy.
      if (g.vertex_count() < 3) return false;
    }
  }
  if (cert.embedding && cert.pattern) {
    const auto keys = edge_keys(g);
    const auto& img = *cert.embedding;
    std::vector<Vertex> used;
    for (Vertex h = 1; h < img.size(); ++h) {
      if (img[h] == 0) continue;
      if (img[h] > g.vertex_count()) return false;
      used.push_back(img[h]);
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
    for (const Edge& e : cert.pattern->edges()) {
      if (img[e.u] == 0 || img[e.v] == 0) return false;
      if (!keys.contains(edge_key(Edge(img[e.u], img[e.v])))) return false;
    }
  }
  return true;
}

}  // namespace aplab
