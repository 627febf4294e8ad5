#include "aplab/errors.hpp"
#include "aplab/strategies.hpp"
#include "builders.hpp"

namespace aplab {

namespace detail {

HamiltonBuilder::HamiltonBuilder(Vertex n)
    : n_(n), paths_(n), ins_(static_cast<std::size_t>(n) + 1, 0) {
  for (Vertex v = 1; v <= n; ++v) off_.insert(off_.end(), v);
}

HamiltonBuilder::HamiltonBuilder(Vertex n, const std::vector<Vertex>& path)
    : n_(n), paths_(PathSystemState::from_paths(n, {path})), ins_(static_cast<std::size_t>(n) + 1, 0) {
  for (Vertex v = 1; v <= n; ++v) {
    if (!paths_.contains(v)) off_.insert(off_.end(), v);
  }
  if (off_.empty() && path.size() == n) enter_closing();
}

Edge HamiltonBuilder::choose(const MultiGraph&, const Sample& x, StepRandom&) {
  if (!x.is_star() || closing_ || n_ < 3) return x.first_edge();
  const Vertex u = x.center();
  const Edge e = closing_stage_ ? close(u) : grow(u);
  if (!closing_stage_ && off_.empty()) enter_closing();
  return e;
}

Edge HamiltonBuilder::grow(Vertex u) {
  if (paths_.longest_path() == PathSystemState::kNoPath) {
    const Vertex v = rr_.pick(off_, u);
    paths_.add_singleton(u);
    paths_.add_singleton(v);
    paths_.join(u, v);
    off_.erase(u);
    off_.erase(v);
    return Edge(u, v);
  }
  const auto [a, b] = paths_.ends(paths_.longest_path());
  if (off_.contains(u)) {
    paths_.add_singleton(u);
    paths_.join(u, b);
    off_.erase(u);
    return Edge(u, b);
  }
  if (u == a || u == b) {
    const Vertex w = rr_.pick(off_);
    paths_.add_singleton(w);
    paths_.join(u, w);
    off_.erase(w);
    return Edge(u, w);
  }
  for (Vertex y : paths_.neighbours(u)) {
    const Vertex w = ins_[y];
    if (w != 0 && off_.contains(w)) {
      paths_.insert_between(y, u, w);
      ins_[y] = 0;
      off_.erase(w);
      return Edge(u, w);
    }
  }
  const Vertex w = rr_.pick(off_);
  ins_[u] = w;
  return Edge(u, w);
}

void HamiltonBuilder::enter_closing() {
  closing_stage_ = true;
  order_ = paths_.order(paths_.longest_path());
  pos_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (std::uint32_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
  mark_.assign(static_cast<std::size_t>(n_) + 1, 0);
}

Edge HamiltonBuilder::close(Vertex u) {
  const Vertex a = order_.front();
  const Vertex b = order_.back();
  if (u == a || u == b) {
    closing_ = Edge(a, b);
    return *closing_;
  }
  const std::uint32_t i = pos_[u];
  const Vertex prev = order_[i - 1];
  if (!mark_[prev]) {
    // Record the edge p_i - b for a later square at p_{i+1}.
    mark_[u] = 1;
    return Edge(u, b);
  }
  // a .. p_{i-1}, b, p_{n-1} .. p_i is a Hamiltonian path; (p_i, a) closes it.
  std::vector<Vertex> rotated(order_.begin(), order_.begin() + i);
  rotated.insert(rotated.end(), order_.rbegin(), order_.rend() - i);
  paths_ = PathSystemState::from_paths(n_, {rotated});
  closing_ = Edge(u, a);
  return *closing_;
}

}  // namespace detail

StrategyHandle hamilton_strategy() {
  return {"hamilton", true, [](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<detail::HamiltonBuilder>(d.vertex_count());
          }};
}

std::unique_ptr<Strategy> cleanup_hamilton(Vertex n, const std::vector<Vertex>& path) {
  if (path.empty()) return std::make_unique<detail::HamiltonBuilder>(n);
  return std::make_unique<detail::HamiltonBuilder>(n, path);
}

}  // namespace aplab
