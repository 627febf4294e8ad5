#pragma once

#include <optional>
#include <set>
#include <vector>

#include "aplab/certificates.hpp"
#include "aplab/strategy.hpp"

namespace aplab::detail {

/// Round-robin choice from an ordered vertex set: next element at or after the cursor.
class RoundRobin {
 public:
  Vertex pick(const std::set<Vertex>& pool, Vertex skip = 0);

 private:
  Vertex cursor_ = 1;
};

class MatchingBuilder final : public Strategy {
 public:
  explicit MatchingBuilder(MatchingState start) : state_(std::move(start)) {}

  Edge choose(const MultiGraph& g, const Sample& x, StepRandom& rng) override;
  Certificate certificate() const override { return {.matching = &state_}; }

  const MatchingState& state() const { return state_; }

 private:
  MatchingState state_;
  RoundRobin rr_;
};

class HamiltonBuilder final : public Strategy {
 public:
  explicit HamiltonBuilder(Vertex n);
  HamiltonBuilder(Vertex n, const std::vector<Vertex>& path);

  Edge choose(const MultiGraph& g, const Sample& x, StepRandom& rng) override;
  Certificate certificate() const override { return {.paths = &paths_, .closing_edge = closing_}; }

  const PathSystemState& paths() const { return paths_; }

 private:
  Edge grow(Vertex u);
  Edge close(Vertex u);
  void enter_closing();
  Vertex arbitrary(Vertex u) const { return u == 1 ? 2 : 1; }

  Vertex n_;
  PathSystemState paths_;
  std::set<Vertex> off_;
  RoundRobin rr_;
  std::vector<Vertex> ins_;
  bool closing_stage_ = false;
  std::vector<Vertex> order_;
  std::vector<std::uint32_t> pos_;
  std::vector<char> mark_;
  std::optional<Edge> closing_;
};

}  // namespace aplab::detail
