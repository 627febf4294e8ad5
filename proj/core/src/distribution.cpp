#include "aplab/distribution.hpp"

#include <algorithm>

#include "aplab/errors.hpp"

namespace aplab {

Sample Sample::star(Vertex n, Vertex center) {
  if (center < 1 || center > n) throw UsageError("star centre outside 1..n");
  if (n < 2) throw UsageError("a star needs at least two vertices");
  Sample s;
  s.n_ = n;
  s.center_ = center;
  return s;
}

Sample Sample::edge_list(std::vector<Edge> edges, std::optional<std::size_t> support_index) {
  if (edges.empty()) throw UsageError("edge subset must be non-empty");
  Sample s;
  s.edges_ = std::move(edges);
  s.support_index_ = support_index;
  return s;
}

bool Sample::contains(const Edge& e) const noexcept {
  if (is_star()) return e.touches(center_) && e.u >= 1 && e.v <= n_;
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

std::vector<Edge> Sample::enumerate() const {
  if (!is_star()) return edges_;
  std::vector<Edge> out;
  out.reserve(n_ - 1);
  for (Vertex v = 1; v <= n_; ++v) {
    if (v != center_) out.emplace_back(center_, v);
  }
  return out;
}

Edge Sample::first_edge() const {
  if (is_star()) return center_ == 1 ? Edge(1, 2) : Edge(1, center_);
  return *std::min_element(edges_.begin(), edges_.end());
}

bool operator==(const Sample& a, const Sample& b) {
  if (a.is_star() || b.is_star()) return a.center_ == b.center_ && a.n_ == b.n_;
  auto x = a.edges_;
  auto y = b.edges_;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

Distribution Distribution::semi_random(Vertex n) {
  if (n < 2) throw UsageError("semi-random process needs n >= 2");
  Distribution d;
  d.kind_ = Kind::kSemiRandomStar;
  d.n_ = n;
  return d;
}

Distribution Distribution::uniform_k_edges(Vertex n, std::uint32_t k) {
  if (n < 2) throw UsageError("uniform edge distribution needs n >= 2");
  if (k < 1) throw UsageError("uniform edge distribution needs k >= 1");
  Distribution d;
  d.kind_ = Kind::kUniformKEdges;
  d.n_ = n;
  d.k_ = k;
  return d;
}

Distribution Distribution::explicit_subsets(Vertex n, std::vector<WeightedSubset> support) {
  if (support.empty()) throw UsageError("explicit distribution needs at least one subset");
  Rational total = 0;
  for (const auto& s : support) {
    if (s.edges.empty()) throw UsageError("explicit subsets must be non-empty");
    if (sgn(s.probability) <= 0) throw UsageError("explicit probabilities must be positive");
    for (const Edge& e : s.edges) {
      if (e.v > n) throw UsageError("explicit subset edge outside 1..n");
    }
    total += s.probability;
  }
  if (total != 1) throw UsageError("explicit probabilities sum to " + to_string(total) + ", not 1");
  Distribution d;
  d.kind_ = Kind::kExplicit;
  d.n_ = n;
  d.support_ = std::move(support);
  Rational running = 0;
  for (const auto& s : d.support_) {
    running += s.probability;
    d.cumulative_.push_back(running.get_d());
  }
  d.cumulative_.back() = 1.0;
  return d;
}

Sample Distribution::sample(StepRandom& rng) const {
  switch (kind_) {
    case Kind::kSemiRandomStar:
      return Sample::star(n_, static_cast<Vertex>(1 + rng.below(n_)));
    case Kind::kUniformKEdges: {
      std::vector<Edge> edges;
      edges.reserve(k_);
      for (std::uint32_t i = 0; i < k_; ++i) {
        const auto a = static_cast<Vertex>(1 + rng.below(n_));
        auto b = static_cast<Vertex>(1 + rng.below(n_ - 1));
        if (b >= a) ++b;
        edges.emplace_back(a, b);
      }
      return Sample::edge_list(std::move(edges));
    }
    case Kind::kExplicit: {
      const double u = rng.unit();
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto index = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), cumulative_.size() - 1));
      return support_sample(index);
    }
  }
  throw ContractViolation("unknown distribution kind");
}

Sample Distribution::support_sample(std::size_t index) const {
  if (kind_ != Kind::kExplicit) throw UsageError("support_sample requires an explicit distribution");
  if (index >= support_.size()) throw UsageError("support index out of range");
  return Sample::edge_list(support_[index].edges, index);
}

bool Distribution::in_support(const Sample& s) const {
  switch (kind_) {
    case Kind::kSemiRandomStar:
      return s.is_star() && s.star_size() == n_;
    case Kind::kUniformKEdges:
      return !s.is_star() && s.edges().size() == k_ &&
             std::all_of(s.edges().begin(), s.edges().end(), [&](const Edge& e) { return e.v <= n_; });
    case Kind::kExplicit:
      if (s.is_star()) return false;
      return std::any_of(support_.begin(), support_.end(),
                         [&](const WeightedSubset& w) { return Sample::edge_list(w.edges) == s; });
  }
  return false;
}

std::string Distribution::describe() const {
  switch (kind_) {
    case Kind::kSemiRandomStar:
      return "semi-random";
    case Kind::kUniformKEdges:
      return "uniform-k-edges:" + std::to_string(k_);
    case Kind::kExplicit:
      return "explicit:" + std::to_string(support_.size());
  }
  return "unknown";
}

}  // namespace aplab
