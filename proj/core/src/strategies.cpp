#include "aplab/strategies.hpp"

#include <algorithm>
#include <cmath>

#include "aplab/errors.hpp"
#include "aplab/property.hpp"
#include "builders.hpp"

namespace aplab {

namespace {

class MinDegreeGreedy final : public Strategy {
 public:
  explicit MinDegreeGreedy(Vertex n) : tracker_(n) {}

  Edge choose(const MultiGraph& g, const Sample& x, StepRandom&) override {
    if (!synced_) {
      for (const Edge& e : g.edges()) record(e);
      synced_ = true;
    }
    Edge e;
    if (x.is_star()) {
      e = Edge(x.center(), tracker_.argmin(x.center()));
    } else {
      const auto edges = x.edges();
      e = *std::min_element(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
        const auto ka = std::minmax(tracker_.degree(a.u), tracker_.degree(a.v));
        const auto kb = std::minmax(tracker_.degree(b.u), tracker_.degree(b.v));
        return ka != kb ? ka < kb : a < b;
      });
    }
    record(e);
    return e;
  }

 private:
  void record(const Edge& e) {
    tracker_.increment(e.u);
    tracker_.increment(e.v);
  }

  MinDegreeTracker tracker_;
  bool synced_ = false;
};

class BoostStrategy final : public Strategy {
 public:
  BoostStrategy(const Distribution& dist, StrategyHandle inner, std::uint64_t m, std::uint64_t k)
      : dist_(&dist), inner_handle_(std::move(inner)), m_(m), k_(k), virtual_(dist.vertex_count()) {
    inner_ = inner_handle_.make(dist);
  }

  Edge choose(const MultiGraph&, const Sample& x, StepRandom& rng) override {
    if (in_block_ == m_) {
      inner_ = inner_handle_.make(*dist_);
      virtual_ = MultiGraph(dist_->vertex_count());
      in_block_ = 0;
    }
    const Edge e = inner_->choose(virtual_, x, rng);
    virtual_.add_edge(e);
    ++in_block_;
    ++total_;
    return e;
  }

  Certificate certificate() const override { return inner_->certificate(); }
  bool exhausted() const override { return total_ >= m_ * k_; }

 private:
  const Distribution* dist_;
  StrategyHandle inner_handle_;
  std::uint64_t m_;
  std::uint64_t k_;
  std::unique_ptr<Strategy> inner_;
  MultiGraph virtual_;
  std::uint64_t in_block_ = 0;
  std::uint64_t total_ = 0;
};

class ApproxThenCleanup final : public Strategy {
 public:
  ApproxThenCleanup(Vertex n, CleanupTarget target) : n_(n), target_(target) {
    if (target_ == CleanupTarget::kMatching) {
      matching_ = std::make_unique<detail::MatchingBuilder>(MatchingState(n));
    } else {
      hamilton_ = std::make_unique<detail::HamiltonBuilder>(n);
    }
    maybe_switch();
  }

  Edge choose(const MultiGraph& g, const Sample& x, StepRandom& rng) override {
    Edge e;
    if (cleanup_) {
      e = cleanup_->choose(g, x, rng);
    } else {
      e = builder().choose(g, x, rng);
      ++steps_;
      maybe_switch();
    }
    return e;
  }

  Certificate certificate() const override { return cleanup_ ? cleanup_->certificate() : builder_cert(); }

  std::vector<std::pair<std::string, std::uint64_t>> markers() const override {
    if (!switch_step_) return {};
    return {{"cleanup_start", *switch_step_}};
  }

 private:
  Strategy& builder() {
    return matching_ ? static_cast<Strategy&>(*matching_) : static_cast<Strategy&>(*hamilton_);
  }
  Certificate builder_cert() const { return matching_ ? matching_->certificate() : hamilton_->certificate(); }

  void maybe_switch() {
    if (target_ == CleanupTarget::kMatching) {
      const auto& st = matching_->state();
      if (st.unsaturated().size() > approx_slack(n_)) return;
      cleanup_ = cleanup_matching(MatchingState::from_edges(n_, st.edges()));
    } else {
      const auto& ps = hamilton_->paths();
      const std::uint64_t target = approx_path_length(n_);
      std::vector<Vertex> path;
      if (ps.longest_path() != PathSystemState::kNoPath) {
        if (ps.longest_path_edges() < target) return;
        path = ps.order(ps.longest_path());
      } else if (target > 0) {
        return;
      }
      cleanup_ = cleanup_hamilton(n_, path);
    }
    switch_step_ = steps_;
  }

  Vertex n_;
  CleanupTarget target_;
  std::unique_ptr<detail::MatchingBuilder> matching_;
  std::unique_ptr<detail::HamiltonBuilder> hamilton_;
  std::unique_ptr<Strategy> cleanup_;
  std::uint64_t steps_ = 0;
  std::optional<std::uint64_t> switch_step_;
};

}  // namespace

StrategyHandle min_degree_strategy(std::uint32_t k) {
  if (k < 1) throw UsageError("min-degree strategy needs k >= 1");
  return {"min-degree:" + std::to_string(k), true, [](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<MinDegreeGreedy>(d.vertex_count());
          }};
}

StrategyHandle multi_round_boost(const StrategyHandle& inner, std::uint64_t m, std::uint64_t k) {
  if (m < 1 || k < 1) throw UsageError("boost needs m >= 1 and k >= 1");
  return {"boost:" + inner.id + ":" + std::to_string(m) + ":" + std::to_string(k), inner.deterministic,
          [inner, m, k](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<BoostStrategy>(d, inner, m, k);
          }};
}

std::uint64_t boost_rounds(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw UsageError("theta must lie in (0, 1)");
  const double r = std::ceil(std::log2(1.0 / (1.0 - theta)) - 1e-12);
  return static_cast<std::uint64_t>(std::max(1.0, r));
}

StrategyHandle approx_then_cleanup(CleanupTarget target) {
  const bool matching = target == CleanupTarget::kMatching;
  return {matching ? "approx-cleanup:matching" : "approx-cleanup:hamilton", true,
          [target](const Distribution& d) -> std::unique_ptr<Strategy> {
            return std::make_unique<ApproxThenCleanup>(d.vertex_count(), target);
          }};
}

}  // namespace aplab
