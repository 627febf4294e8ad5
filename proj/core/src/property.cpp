#include "aplab/property.hpp"

#include <algorithm>
#include <cmath>

#include "aplab/errors.hpp"
#include "subgraph_search.hpp"

namespace aplab {

namespace {

/// True when no certificate is available. Only the starting check insists on one: a
/// strategy may withhold its certificate temporarily (e.g. after a diverging free move).
bool no_certificate(bool present, bool initial, const std::string& what) {
  if (!present && initial) {
    throw LimitExceeded(what + " at n > " + std::to_string(kExhaustiveLimit) +
                        " needs a strategy that maintains a certificate");
  }
  return !present;
}

void require_valid(const Certificate& cert, const MultiGraph& g, const std::string& what) {
  if (!verify_certificate(cert, g)) throw ContractViolation(what + ": strategy certificate does not hold in the graph");
}

class MinDegreeMonitor final : public Monitor {
 public:
  explicit MinDegreeMonitor(std::uint32_t k) : k_(k) {}

  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate&) override {
    if (!added) {
      deficient_ = 0;
      for (std::uint32_t d : g.degrees()) deficient_ += d < k_;
    } else {
      deficient_ -= g.degree(added->u) == k_;
      deficient_ -= g.degree(added->v) == k_;
    }
    return deficient_ == 0;
  }

 private:
  std::uint32_t k_;
  std::uint64_t deficient_ = 0;
};

class MatchingMonitor final : public Monitor {
 public:
  explicit MatchingMonitor(bool approx) : approx_(approx) {}

  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate& cert) override {
    const Vertex n = g.vertex_count();
    const std::uint64_t allowed = approx_ ? approx_slack(n) : n % 2;
    if (n <= kExhaustiveLimit) return n - 2 * max_matching_size(g) <= allowed;
    if (no_certificate(cert.matching != nullptr, !added, approx_ ? "approx-matching" : "perfect-matching")) return false;
    if (cert.matching->unsaturated().size() > allowed) return false;
    require_valid(cert, g, "matching monitor");
    return true;
  }

 private:
  bool approx_;
};

class HamiltonMonitor final : public Monitor {
 public:
  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate& cert) override {
    const Vertex n = g.vertex_count();
    if (n <= kExhaustiveLimit) return check_hamiltonian(g);
    if (no_certificate(cert.paths != nullptr, !added, "hamiltonian")) return false;
    if (!cert.closing_edge) return false;
    require_valid(cert, g, "hamilton monitor");
    return true;
  }
};

class ApproxPathMonitor final : public Monitor {
 public:
  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate& cert) override {
    const Vertex n = g.vertex_count();
    const std::uint64_t target = approx_path_length(n);
    if (n <= kExhaustiveLimit) return longest_path_edges(g) >= target;
    if (target == 0) return true;
    if (no_certificate(cert.paths != nullptr, !added, "approx-path")) return false;
    if (cert.paths->longest_path_edges() < target) return false;
    require_valid(cert, g, "approx-path monitor");
    return true;
  }
};

class SubgraphMonitor final : public Monitor {
 public:
  explicit SubgraphMonitor(std::shared_ptr<const detail::SubgraphSearch> search) : search_(std::move(search)) {}

  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate&) override {
    if (!added) {
      view_ = std::make_unique<detail::SimpleView>(g);
      found_ = search_->find_any(*view_).has_value();
    } else if (!found_ && view_->add(*added)) {
      found_ = search_->find_through(*view_, *added).has_value();
    }
    return found_;
  }

 private:
  std::shared_ptr<const detail::SubgraphSearch> search_;
  std::unique_ptr<detail::SimpleView> view_;
  bool found_ = false;
};

class ContainsEdgeMonitor final : public Monitor {
 public:
  explicit ContainsEdgeMonitor(Edge e) : e_(e) {}

  bool update(const MultiGraph& g, std::optional<Edge> added, const Certificate&) override {
    if (!added) {
      found_ = g.multiplicity(e_) > 0;
    } else if (*added == e_) {
      found_ = true;
    }
    return found_;
  }

 private:
  Edge e_;
  bool found_ = false;
};

bool contains_all(const MultiGraph& g, const std::vector<Edge>& set) {
  return std::all_of(set.begin(), set.end(), [&](const Edge& e) { return g.multiplicity(e) > 0; });
}

class CheckMonitor final : public Monitor {
 public:
  explicit CheckMonitor(std::function<bool(const MultiGraph&)> check) : check_(std::move(check)) {}

  bool update(const MultiGraph& g, std::optional<Edge>, const Certificate&) override { return check_(g); }

 private:
  std::function<bool(const MultiGraph&)> check_;
};

/// Waits for a sample containing the missing edge.
class ContainsEdgeReplacement final : public Strategy {
 public:
  explicit ContainsEdgeReplacement(Edge e) : e_(e) {}

  Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override {
    return x.contains(e_) ? e_ : x.first_edge();
  }

 private:
  Edge e_;
};

std::uint64_t ceil_pow(Vertex n, long double exponent) {
  return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<long double>(n), exponent)));
}

}  // namespace

Property min_degree_property(std::uint32_t k) {
  if (k < 1) throw UsageError("min-degree property needs k >= 1");
  Property p;
  p.id = "min-degree:" + std::to_string(k);
  p.check = [k](const MultiGraph& g) { return check_min_degree_k(g, k); };
  p.make_monitor = [k] { return std::make_unique<MinDegreeMonitor>(k); };
  p.replacement = ReplacementSpec{
      [](Vertex) -> std::uint64_t { return 2; },
      [k](const MultiGraph& g, const Edge&, const Certificate&) { return replace_min_degree_edge(g, k); }};
  return p;
}

Property perfect_matching_property() {
  Property p;
  p.id = "perfect-matching";
  p.check = [](const MultiGraph& g) { return check_perfect_matching(g); };
  p.make_monitor = [] { return std::make_unique<MatchingMonitor>(false); };
  return p;
}

Property hamiltonian_property() {
  Property p;
  p.id = "hamiltonian";
  p.check = [](const MultiGraph& g) { return check_hamiltonian(g); };
  p.make_monitor = [] { return std::make_unique<HamiltonMonitor>(); };
  return p;
}

Property approx_matching_property() {
  Property p;
  p.id = "approx-matching";
  p.check = [](const MultiGraph& g) {
    return g.vertex_count() - 2 * max_matching_size(g) <= approx_slack(g.vertex_count());
  };
  p.make_monitor = [] { return std::make_unique<MatchingMonitor>(true); };
  p.replacement = ReplacementSpec{
      [](Vertex n) { return ceil_pow(n, 0.48L); },
      [](const MultiGraph& g, const Edge& e, const Certificate& cert) {
        if (!cert.matching) throw ContractViolation("approx-matching replacement needs a matching certificate");
        return replace_matching_edge(g, e, *cert.matching);
      }};
  return p;
}

Property approx_path_property() {
  Property p;
  p.id = "approx-path";
  p.check = [](const MultiGraph& g) { return longest_path_edges(g) >= approx_path_length(g.vertex_count()); };
  p.make_monitor = [] { return std::make_unique<ApproxPathMonitor>(); };
  p.replacement = ReplacementSpec{
      [](Vertex n) { return ceil_pow(n, 0.27L) + ceil_pow(n, 0.4L); },
      [](const MultiGraph& g, const Edge& e, const Certificate& cert) {
        if (!cert.paths) throw ContractViolation("approx-path replacement needs a path certificate");
        return replace_path_edge(g, e, *cert.paths);
      }};
  return p;
}

Property subgraph_property(MultiGraph h, std::string id) {
  auto search = std::make_shared<const detail::SubgraphSearch>(h);
  auto pattern = std::make_shared<const MultiGraph>(std::move(h));
  Property p;
  p.id = std::move(id);
  p.check = [pattern](const MultiGraph& g) { return check_contains_subgraph(g, *pattern); };
  p.make_monitor = [search] { return std::make_unique<SubgraphMonitor>(search); };
  return p;
}

Property contains_edge_property(Edge e, std::uint64_t replacement_budget) {
  Property p;
  p.id = "contains-edge:" + std::to_string(e.u) + "-" + std::to_string(e.v);
  p.check = [e](const MultiGraph& g) { return g.multiplicity(e) > 0; };
  p.make_monitor = [e] { return std::make_unique<ContainsEdgeMonitor>(e); };
  p.replacement = ReplacementSpec{
      [replacement_budget](Vertex) { return replacement_budget; },
      [](const MultiGraph&, const Edge& missing, const Certificate&) {
        return std::make_unique<ContainsEdgeReplacement>(missing);
      }};
  return p;
}

Property upset_property(std::vector<std::vector<Edge>> minimal_sets, std::string id) {
  Property p;
  p.id = std::move(id);
  p.check = [sets = std::move(minimal_sets)](const MultiGraph& g) {
    return std::any_of(sets.begin(), sets.end(), [&](const std::vector<Edge>& s) { return contains_all(g, s); });
  };
  p.make_monitor = [check = p.check] { return std::make_unique<CheckMonitor>(check); };
  return p;
}

Property always_true_property() {
  Property p;
  p.id = "always-true";
  p.check = [](const MultiGraph&) { return true; };
  p.make_monitor = [check = p.check] { return std::make_unique<CheckMonitor>(check); };
  return p;
}

}  // namespace aplab
