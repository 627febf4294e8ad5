#include <algorithm>
#include <unordered_map>

#include "aplab/errors.hpp"
#include "aplab/property.hpp"
#include "aplab/strategies.hpp"

namespace aplab {

DegeneracyOrder degeneracy_order(const MultiGraph& h) {
  const Vertex k = h.vertex_count();
  auto adj = h.simple_adjacency();
  std::vector<char> removed(static_cast<std::size_t>(k) + 1, 0);
  std::vector<std::uint32_t> deg(static_cast<std::size_t>(k) + 1, 0);
  for (Vertex v = 1; v <= k; ++v) deg[v] = static_cast<std::uint32_t>(adj[v].size());
  DegeneracyOrder out;
  std::vector<Vertex> peeled;
  for (Vertex step = 0; step < k; ++step) {
    Vertex best = 0;
    for (Vertex v = 1; v <= k; ++v) {
      if (!removed[v] && (best == 0 || deg[v] < deg[best])) best = v;
    }
    out.degeneracy = std::max(out.degeneracy, deg[best]);
    removed[best] = 1;
    for (Vertex w : adj[best]) {
      if (!removed[w]) --deg[w];
    }
    peeled.push_back(best);
  }
  out.order.assign(peeled.rbegin(), peeled.rend());
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(k) + 1, 0);
  for (std::uint32_t i = 0; i < out.order.size(); ++i) pos[out.order[i]] = i;
  out.earlier.resize(k);
  for (std::uint32_t i = 0; i < out.order.size(); ++i) {
    for (Vertex w : adj[out.order[i]]) {
      if (pos[w] < i) out.earlier[i].push_back(w);
    }
    std::sort(out.earlier[i].begin(), out.earlier[i].end(), [&](Vertex x, Vertex y) { return pos[x] < pos[y]; });
  }
  return out;
}

namespace {

/// Phase i embeds v_i: the j-th square on an unused vertex z during the phase gets the
/// image of the j-th earlier neighbour of v_i as its circle; z becomes v_i once it has been
/// joined to all of them. Vertices with no earlier neighbour take the lowest unused vertex.
class SubgraphBuilder final : public Strategy {
 public:
  SubgraphBuilder(Vertex n, std::shared_ptr<const MultiGraph> h, std::shared_ptr<const DegeneracyOrder> plan)
      : h_(std::move(h)),
        plan_(std::move(plan)),
        image_(static_cast<std::size_t>(h_->vertex_count()) + 1, 0),
        used_(static_cast<std::size_t>(n) + 1, 0) {
    if (h_->vertex_count() > n) throw UsageError("pattern has more vertices than the host graph");
  }

  Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override {
    if (!x.is_star() || done()) return x.first_edge();
    const Vertex u = x.center();
    if (phase_ == 0) {
      const Vertex w = lowest_unused(u);
      embed(w);
      settle();
      if (!done() && !used_[u]) return hit(u);
      return Edge(u, w);
    }
    if (used_[u]) return Edge(u, any_image_other_than(u));
    return hit(u);
  }

  Certificate certificate() const override {
    if (!done()) return {};
    return {.embedding = &image_, .pattern = h_.get()};
  }

 private:
  bool done() const { return phase_ == plan_->order.size(); }

  Vertex lowest_unused(Vertex skip) {
    while (cursor_ < used_.size() && used_[cursor_]) ++cursor_;
    Vertex v = cursor_;
    while (v < used_.size() && (used_[v] || v == skip)) ++v;
    if (v >= used_.size()) throw ContractViolation("subgraph builder ran out of vertices");
    return v;
  }

  void embed(Vertex z) {
    image_[plan_->order[phase_]] = z;
    used_[z] = 1;
    ++phase_;
    hits_.clear();
  }

  /// Embeds leading vertices that have no earlier neighbours.
  void settle() {
    while (!done() && plan_->earlier[phase_].empty()) embed(lowest_unused(0));
  }

  Edge hit(Vertex u) {
    const auto& need = plan_->earlier[phase_];
    const std::uint32_t j = hits_[u]++;
    const Vertex circle = image_[need[j]];
    if (j + 1 == need.size()) {
      embed(u);
      settle();
    }
    return Edge(u, circle);
  }

  Vertex any_image_other_than(Vertex u) const {
    for (Vertex h = 1; h < image_.size(); ++h) {
      if (image_[h] != 0 && image_[h] != u) return image_[h];
    }
    return u == 1 ? 2 : 1;
  }

  std::shared_ptr<const MultiGraph> h_;
  std::shared_ptr<const DegeneracyOrder> plan_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  Vertex cursor_ = 1;
  std::size_t phase_ = 0;
  std::unordered_map<Vertex, std::uint32_t> hits_;
};

}  // namespace

StrategyHandle degenerate_subgraph_strategy(MultiGraph h, std::string id) {
  if (h.vertex_count() > kPatternLimit) {
    throw UsageError("pattern has " + std::to_string(h.vertex_count()) + " vertices; limit is " +
                     std::to_string(kPatternLimit));
  }
  if (h.vertex_count() == 0) throw UsageError("pattern has no vertices");
  auto plan = std::make_shared<const DegeneracyOrder>(degeneracy_order(h));
  auto pattern = std::make_shared<const MultiGraph>(std::move(h));
  return {std::move(id), true, [pattern, plan](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<SubgraphBuilder>(d.vertex_count(), pattern, plan);
          }};
}

}  // namespace aplab
