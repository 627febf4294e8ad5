#include "aplab/strategies.hpp"
#include "builders.hpp"

namespace aplab {

namespace detail {

Vertex RoundRobin::pick(const std::set<Vertex>& pool, Vertex skip) {
  if (pool.empty()) return 0;
  auto it = pool.lower_bound(cursor_);
  if (it == pool.end()) it = pool.begin();
  if (*it == skip) {
    if (++it == pool.end()) it = pool.begin();
    if (*it == skip) return 0;
  }
  cursor_ = *it + 1;
  return *it;
}

Edge MatchingBuilder::choose(const MultiGraph&, const Sample& x, StepRandom&) {
  const auto& unsat = state_.unsaturated();
  if (!x.is_star()) {
    for (const Edge& e : x.edges()) {
      if (!state_.saturated(e.u) && !state_.saturated(e.v)) {
        state_.match(e.u, e.v);
        return e;
      }
    }
    return x.first_edge();
  }
  const Vertex u = x.center();
  if (unsat.empty()) return x.first_edge();
  if (!state_.saturated(u)) {
    const auto it = unsat.begin();
    const Vertex v = *it != u ? *it : (std::next(it) != unsat.end() ? *std::next(it) : 0);
    if (v == 0) return x.first_edge();
    state_.match(u, v);
    return Edge(u, v);
  }
  const Vertex p = state_.mate(u);
  if (state_.record_valid(p)) {
    const Vertex v = state_.record_of(p);
    const auto it = unsat.begin();
    const Vertex v2 = *it != v ? *it : (std::next(it) != unsat.end() ? *std::next(it) : 0);
    if (v2 != 0) {
      state_.augment(p, u, v, v2);
      state_.clear_record(p);
      return Edge(u, v2);
    }
  }
  const Vertex v = rr_.pick(unsat);
  state_.set_record(u, v);
  return Edge(u, v);
}

}  // namespace detail

StrategyHandle matching_strategy() {
  return {"matching", true, [](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<detail::MatchingBuilder>(MatchingState(d.vertex_count()));
          }};
}

std::unique_ptr<Strategy> cleanup_matching(const MatchingState& start) {
  return std::make_unique<detail::MatchingBuilder>(start);
}

}  // namespace aplab
