#include <catch_amalgamated.hpp>

#include "aplab/distribution.hpp"
#include "aplab/errors.hpp"
#include "aplab/threshold.hpp"

using namespace aplab;

TEST_CASE("point mass always returns its subset") {
  const auto d = Distribution::explicit_subsets(3, {{{Edge(1, 2)}, Rational(1)}});
  const CounterRng rng(1, Stream::kEnvironment, 0);
  for (int t = 0; t < 100; ++t) {
    StepRandom r(rng, t);
    const Sample s = d.sample(r);
    CHECK(s == d.support_sample(0));
    CHECK(s.support_index() == 0u);
  }
}

TEST_CASE("two equiprobable subsets split evenly") {
  const auto d = Distribution::explicit_subsets(3, {{{Edge(1, 2)}, Rational(1, 2)}, {{Edge(1, 3)}, Rational(1, 2)}});
  const CounterRng rng(5, Stream::kEnvironment, 0);
  const std::uint64_t n = 20000;
  std::uint64_t first = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    StepRandom r(rng, t);
    if (*d.sample(r).support_index() == 0) ++first;
  }
  const auto ci = wilson(first, n, 3.0);
  CHECK(ci.lo <= 0.5);
  CHECK(0.5 <= ci.hi);
}

TEST_CASE("semi-random stars cover every centre") {
  const auto d = Distribution::semi_random(5);
  const CounterRng rng(2, Stream::kEnvironment, 0);
  std::vector<int> seen(6, 0);
  for (int t = 0; t < 500; ++t) {
    StepRandom r(rng, t);
    const Sample s = d.sample(r);
    REQUIRE(s.is_star());
    REQUIRE(s.center() >= 1);
    REQUIRE(s.center() <= 5);
    ++seen[s.center()];
    CHECK(d.in_support(s));
  }
  for (Vertex v = 1; v <= 5; ++v) CHECK(seen[v] > 0);
}

TEST_CASE("a star denotes every edge at its centre") {
  const Sample s = Sample::star(4, 2);
  const auto edges = s.enumerate();
  CHECK(edges == std::vector<Edge>{Edge(1, 2), Edge(2, 3), Edge(2, 4)});
  CHECK(s.contains(Edge(2, 4)));
  CHECK_FALSE(s.contains(Edge(1, 3)));
  CHECK(s.first_edge() == Edge(1, 2));
}

TEST_CASE("uniform k edges draws k distinct-endpoint edges") {
  const auto d = Distribution::uniform_k_edges(6, 3);
  const CounterRng rng(4, Stream::kEnvironment, 0);
  for (int t = 0; t < 200; ++t) {
    StepRandom r(rng, t);
    const Sample s = d.sample(r);
    CHECK(s.edges().size() == 3);
    for (const Edge& e : s.edges()) CHECK(e.v <= 6);
  }
}

TEST_CASE("explicit distributions validate their input") {
  CHECK_THROWS_AS(Distribution::explicit_subsets(3, {{{Edge(1, 2)}, Rational(1, 2)}}), UsageError);
  CHECK_THROWS_AS(Distribution::explicit_subsets(3, {{{}, Rational(1)}}), UsageError);
  CHECK_THROWS_AS(Distribution::explicit_subsets(3, {{{Edge(1, 4)}, Rational(1)}}), UsageError);
  CHECK_THROWS_AS(Distribution::explicit_subsets(3, {{{Edge(1, 2)}, Rational(3, 2)}, {{Edge(1, 3)}, Rational(-1, 2)}}),
                  UsageError);
  CHECK_THROWS_AS(Distribution::semi_random(1), UsageError);
  CHECK_THROWS_AS(Distribution::semi_random(4).support_sample(0), UsageError);
}
