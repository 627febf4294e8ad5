#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aplab/graph.hpp"
#include "aplab/random.hpp"
#include "aplab/rational.hpp"

namespace aplab {

/// One presented edge subset X_t. A star is stored as its centre only; the denoted set is
/// every edge at the centre.
class Sample {
 public:
  static Sample star(Vertex n, Vertex center);
  static Sample edge_list(std::vector<Edge> edges, std::optional<std::size_t> support_index = std::nullopt);

  bool is_star() const noexcept { return center_ != 0; }
  Vertex center() const noexcept { return center_; }
  Vertex star_size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::optional<std::size_t> support_index() const noexcept { return support_index_; }

  bool contains(const Edge& e) const noexcept;
  std::vector<Edge> enumerate() const;
  /// Lowest edge in lexicographic order.
  Edge first_edge() const;

  friend bool operator==(const Sample& a, const Sample& b);

 private:
  Sample() = default;
  Vertex n_ = 0;
  Vertex center_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::size_t> support_index_;
};

/// One listed subset of an explicit distribution with its exact probability.
struct WeightedSubset {
  std::vector<Edge> edges;
  Rational probability;
};

/// The distribution D the process samples from.
class Distribution {
 public:
  enum class Kind { kSemiRandomStar, kUniformKEdges, kExplicit };

  static Distribution semi_random(Vertex n);
  /// k independent uniform edges of K_n per step.
  static Distribution uniform_k_edges(Vertex n, std::uint32_t k);
  /// Probabilities must be positive and sum to exactly 1; subsets non-empty with edges in [n].
  static Distribution explicit_subsets(Vertex n, std::vector<WeightedSubset> support);

  Kind kind() const noexcept { return kind_; }
  Vertex vertex_count() const noexcept { return n_; }
  std::uint32_t k() const noexcept { return k_; }
  std::span<const WeightedSubset> support() const noexcept { return support_; }

  /// Pure function of the random cursor. Star centres: 1 + below(n). Explicit: one unit()
  /// draw against the cumulative probabilities in listed order. UniformKEdges: for each edge
  /// a = 1 + below(n), b = 1 + below(n - 1), b += (b >= a).
  Sample sample(StepRandom& rng) const;

  /// The listed subset with the given index (explicit distributions only).
  Sample support_sample(std::size_t index) const;

  bool in_support(const Sample& s) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::kSemiRandomStar;
  Vertex n_ = 0;
  std::uint32_t k_ = 0;
  std::vector<WeightedSubset> support_;
  std::vector<double> cumulative_;
};

}  // namespace aplab
