#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "aplab/errors.hpp"
#include "aplab/property.hpp"

namespace aplab {

namespace {

/// Pairs an unsaturated square with another unsaturated vertex.
class MatchingReplacement final : public Strategy {
 public:
  MatchingReplacement(const Edge& missing, const MatchingState& cert) : state_(cert) {
    if (state_.mate(missing.u) == missing.v) state_.unmatch(missing.u);
  }

  Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override {
    const auto& unsat = state_.unsaturated();
    if (x.is_star()) {
      const Vertex u = x.center();
      if (!state_.saturated(u)) {
        for (Vertex v : unsat) {
          if (v != u) {
            state_.match(u, v);
            return Edge(u, v);
          }
        }
      }
      return x.first_edge();
    }
    for (const Edge& e : x.edges()) {
      if (!state_.saturated(e.u) && !state_.saturated(e.v)) {
        state_.match(e.u, e.v);
        return e;
      }
    }
    return x.first_edge();
  }

  Certificate certificate() const override { return {.matching = &state_}; }

 private:
  MatchingState state_;
};

/// Sends circles to vertices still below degree k.
class MinDegreeReplacement final : public Strategy {
 public:
  explicit MinDegreeReplacement(const MultiGraph& g) : degree_(g.degrees().begin(), g.degrees().end()) {}

  Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override {
    Edge chosen;
    if (x.is_star()) {
      const Vertex u = x.center();
      Vertex best = 0;
      for (Vertex v = 1; v <= degree_.size(); ++v) {
        if (v != u && (best == 0 || degree_[v - 1] < degree_[best - 1])) best = v;
      }
      chosen = Edge(u, best);
    } else {
      const auto edges = x.edges();
      chosen = *std::min_element(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        const auto ka = std::min(degree_[a.u - 1], degree_[a.v - 1]);
        const auto kb = std::min(degree_[b.u - 1], degree_[b.v - 1]);
        return ka != kb ? ka < kb : a < b;
      });
    }
    ++degree_[chosen.u - 1];
    ++degree_[chosen.v - 1];
    return chosen;
  }

 private:
  std::vector<std::uint32_t> degree_;
};

/// Rebuilds a near-spanning path after one of its edges went missing. The longer piece P1
/// keeps a signed position per vertex so square distances stay valid while it grows at
/// the back. Squares in P1 are joined to one end x of P2 until two land within distance
/// n^{1/4}; the second is joined to the other end y, splicing P2 in and dropping the short
/// stretch between them. Off-path squares then extend the path one vertex at a time.
class PathReplacement final : public Strategy {
 public:
  PathReplacement(const MultiGraph& g, const Edge& missing, const PathSystemState& cert)
      : n_(g.vertex_count()),
        target_(approx_path_length(g.vertex_count())),
        reach_(static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(n_), 0.25L)))),
        where_(static_cast<std::size_t>(n_) + 1, kOff),
        pos_(static_cast<std::size_t>(n_) + 1, 0) {
    const auto id = cert.longest_path();
    if (id == PathSystemState::kNoPath) throw ContractViolation("path replacement: empty certificate");
    auto order = cert.order(id);
    std::vector<Vertex> first;
    std::vector<Vertex> second;
    bool split = false;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (!split && i > 0 && Edge(order[i - 1], order[i]) == missing) split = true;
      (split ? second : first).push_back(order[i]);
    }
    if (second.size() > first.size()) std::swap(first, second);
    for (Vertex v : first) place_back(v);
    // A piece without edges is just an off-path vertex.
    if (second.size() >= 2) {
      p2_ = std::move(second);
      for (Vertex v : p2_) where_[v] = kP2;
    }
    merged_ = p2_.empty();
    refresh();
  }

  Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override {
    if (done_ || !x.is_star()) return x.first_edge();
    const Vertex u = x.center();
    const Edge e = merged_ ? extend_step(u) : merge_step(u);
    refresh();
    return e;
  }

  Certificate certificate() const override { return {.paths = &cert_}; }

 private:
  static constexpr std::uint8_t kOff = 0;
  static constexpr std::uint8_t kP1 = 1;
  static constexpr std::uint8_t kP2 = 2;

  Vertex a() const { return p1_.front(); }
  Vertex b() const { return p1_.back(); }

  void place_back(Vertex v) {
    pos_[v] = p1_.empty() ? 0 : pos_[p1_.back()] + 1;
    p1_.push_back(v);
    where_[v] = kP1;
  }

  void place_front(Vertex v) {
    pos_[v] = p1_.empty() ? 0 : pos_[p1_.front()] - 1;
    p1_.push_front(v);
    where_[v] = kP1;
  }

  void absorb_p2(const std::vector<Vertex>& seq, bool back) {
    if (back) {
      for (Vertex v : seq) place_back(v);
    } else {
      for (Vertex v : seq) place_front(v);
    }
    p2_.clear();
    merged_ = true;
  }

  Vertex lowest_off(Vertex skip) const {
    for (Vertex v = 1; v <= n_; ++v) {
      if (where_[v] == kOff && v != skip) return v;
    }
    return 0;
  }

  Edge merge_step(Vertex u) {
    const Vertex x = p2_.front();
    const Vertex y = p2_.back();
    std::vector<Vertex> fwd = p2_;
    std::vector<Vertex> rev(p2_.rbegin(), p2_.rend());
    if (u == b()) {
      absorb_p2(fwd, true);
      return Edge(u, x);
    }
    if (u == a()) {
      absorb_p2(fwd, false);  // x joins a, y becomes the new front
      return Edge(u, x);
    }
    if (u == x || u == y) {
      const Vertex end = b();
      absorb_p2(u == x ? fwd : rev, true);
      return Edge(u, end);
    }
    if (where_[u] == kOff) {
      const Vertex end = b();
      place_back(u);
      return Edge(u, end);
    }
    if (where_[u] == kP2) return Edge(u, x);
    // u is interior to P1.
    const std::int64_t j = pos_[u];
    auto it = recorded_.lower_bound(j - reach_);
    std::optional<std::int64_t> partner;
    for (; it != recorded_.end() && *it <= j + reach_; ++it) {
      if (*it != j) {
        partner = *it;
        break;
      }
    }
    if (!partner) {
      recorded_.insert(j);
      return Edge(u, x);
    }
    splice(*partner, j);
    return Edge(u, y);
  }

  /// Square at position j joins y; the earlier square at position i was joined to x.
  void splice(std::int64_t i, std::int64_t j) {
    const std::int64_t base = pos_[p1_.front()];
    std::vector<Vertex> old(p1_.begin(), p1_.end());
    const auto at = [&](std::int64_t p) { return static_cast<std::size_t>(p - base); };
    std::vector<Vertex> path;
    if (i < j) {
      path.assign(old.begin(), old.begin() + at(i) + 1);
      path.insert(path.end(), p2_.begin(), p2_.end());
      path.insert(path.end(), old.begin() + at(j), old.end());
    } else {
      path.assign(old.begin(), old.begin() + at(j) + 1);
      path.insert(path.end(), p2_.rbegin(), p2_.rend());
      path.insert(path.end(), old.begin() + at(i), old.end());
    }
    for (Vertex v : old) where_[v] = kOff;
    for (Vertex v : p2_) where_[v] = kOff;
    p1_.clear();
    for (Vertex v : path) place_back(v);
    p2_.clear();
    merged_ = true;
  }

  Edge extend_step(Vertex u) {
    if (where_[u] == kOff) {
      const Vertex end = b();
      place_back(u);
      return Edge(u, end);
    }
    if (u == a() || u == b()) {
      const Vertex w = lowest_off(u);
      if (w != 0) {
        if (u == b()) {
          place_back(w);
        } else {
          place_front(w);
        }
        return Edge(u, w);
      }
    }
    return Edge(u, u == 1 ? 2 : 1);
  }

  void refresh() {
    std::vector<std::vector<Vertex>> paths{std::vector<Vertex>(p1_.begin(), p1_.end())};
    if (!p2_.empty()) paths.push_back(p2_);
    cert_ = PathSystemState::from_paths(n_, paths);
    done_ = p1_.size() - 1 >= target_;
  }

  Vertex n_;
  std::uint64_t target_;
  std::int64_t reach_;
  std::vector<std::uint8_t> where_;
  std::vector<std::int64_t> pos_;
  std::deque<Vertex> p1_;
  std::vector<Vertex> p2_;
  std::set<std::int64_t> recorded_;
  bool merged_ = false;
  bool done_ = false;
  PathSystemState cert_{0};
};

}  // namespace

std::unique_ptr<Strategy> replace_matching_edge(const MultiGraph&, const Edge& missing, const MatchingState& cert) {
  return std::make_unique<MatchingReplacement>(missing, cert);
}

std::unique_ptr<Strategy> replace_path_edge(const MultiGraph& g, const Edge& missing, const PathSystemState& cert) {
  return std::make_unique<PathReplacement>(g, missing, cert);
}

std::unique_ptr<Strategy> replace_min_degree_edge(const MultiGraph& g, std::uint32_t) {
  return std::make_unique<MinDegreeReplacement>(g);
}

}  // namespace aplab
