#include <catch_amalgamated.hpp>

#include <cmath>

#include "aplab/errors.hpp"
#include "aplab/process.hpp"
#include "aplab/property.hpp"
#include "aplab/strategies.hpp"
#include "aplab/threshold.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

class StarScript final : public SampleSource {
 public:
  StarScript(Vertex n, std::vector<Vertex> centers) : n_(n), centers_(std::move(centers)) {}
  Sample next(std::uint64_t step) override { return Sample::star(n_, centers_.at(step - 1)); }

 private:
  Vertex n_;
  std::vector<Vertex> centers_;
};

RunOptions opts(std::uint64_t max_steps, std::uint64_t trial = 0, std::uint64_t seed = 1) {
  RunOptions o;
  o.max_steps = max_steps;
  o.seed = seed;
  o.trial = trial;
  return o;
}

Trace scripted(const StrategyHandle& h, const Property& p, Vertex n, std::vector<Vertex> centers) {
  const auto d = Distribution::semi_random(n);
  auto s = h.make(d);
  StarScript src(n, centers);
  return run_with(d, *s, p, src, opts(centers.size()), false);
}

}  // namespace

TEST_CASE("min-degree greedy sends the circle to the lowest-degree other vertex") {
  const auto t = scripted(min_degree_strategy(1), always_true_property(), 4, {1});
  CHECK(t.stopping_time == 0u);
  const auto run = scripted(min_degree_strategy(2), min_degree_property(2), 4, {1, 1, 2, 3, 4, 4});
  REQUIRE(run.steps.size() >= 3);
  CHECK(run.steps[0].chosen == Edge(1, 2));
  CHECK(run.steps[1].chosen == Edge(1, 3));
  CHECK(run.steps[2].chosen == Edge(2, 4));
}

TEST_CASE("matching strategy at n = 2 finishes in one step") {
  for (std::uint64_t trial = 0; trial < 10; ++trial)
    CHECK(run_process(Distribution::semi_random(2), matching_strategy(), perfect_matching_property(), opts(5, trial))
              .stopping_time == 1u);
}

TEST_CASE("augmentation: M = {(u,w)}, record (u,v), square w gives {(u,v),(w,v')}") {
  MatchingState start(4);
  start.match(1, 2);
  start.set_record(1, 3);
  auto s = cleanup_matching(start);
  MultiGraph g(4);
  g.add_edge(Edge(1, 2));
  g.add_edge(Edge(1, 3));
  const CounterRng rng(0, Stream::kStrategy, 0);
  StepRandom r(rng, 1);
  const Edge e = s->choose(g, Sample::star(4, 2), r);
  CHECK(e == Edge(2, 4));
  g.add_edge(e);
  const auto cert = s->certificate();
  REQUIRE(cert.matching);
  CHECK(cert.matching->edges() == std::vector<Edge>{Edge(1, 3), Edge(2, 4)});
  CHECK(cert.matching->verify(g));
}

TEST_CASE("hamilton builder on a scripted n = 4 run") {
  // 1 -> path 1-2; 3 joins at 2; 4 joins at 1; path 3-2-1-4 spans, square 3 closes with (3,4).
  const auto t = scripted(hamilton_strategy(), hamiltonian_property(), 4, {1, 3, 4, 3});
  CHECK(t.stopping_time == 4u);
  CHECK(oracle::hamiltonian(t.final_graph));
}

TEST_CASE("hamilton builder at n = 3 finishes at step 3 with probability 2/3") {
  // After two steps the path spans [3]; step 3 closes iff the square is an endpoint.
  int finished = 0;
  for (Vertex a = 1; a <= 3; ++a)
    for (Vertex b = 1; b <= 3; ++b)
      for (Vertex c = 1; c <= 3; ++c) {
        const auto t = scripted(hamilton_strategy(), hamiltonian_property(), 3, {a, b, c});
        CHECK((!t.stopping_time || *t.stopping_time == 3));
        finished += t.stopping_time.has_value();
      }
  CHECK(finished == 18);
}

TEST_CASE("hamilton strategy certificate holds under verify_every") {
  RunOptions o = opts(3000, 0, 4);
  o.verify_every = 1;
  o.record_steps = false;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    o.trial = trial;
    const auto t = run_process(Distribution::semi_random(300), hamilton_strategy(), hamiltonian_property(), o);
    CHECK(t.stopping_time.has_value());
  }
}

TEST_CASE("verify_every catches a certificate that does not hold") {
  class Liar final : public Strategy {
   public:
    Liar() : m_(MatchingState::from_edges(20, {Edge(1, 2)})) {}
    Edge choose(const MultiGraph&, const Sample& x, StepRandom&) override { return x.first_edge(); }
    Certificate certificate() const override {
      Certificate c;
      c.matching = &m_;
      return c;
    }

   private:
    MatchingState m_;
  };
  const StrategyHandle liar{"liar", true, [](const Distribution&) { return std::make_unique<Liar>(); }};
  RunOptions o = opts(50);
  o.verify_every = 5;
  CHECK_THROWS_AS(run_process(Distribution::semi_random(20), liar, min_degree_property(5), o), ContractViolation);
}

TEST_CASE("degeneracy order") {
  const auto k3 = degeneracy_order(oracle::complete(3));
  CHECK(k3.degeneracy == 2);
  CHECK(k3.order == std::vector<Vertex>{3, 2, 1});
  CHECK(k3.earlier[0].empty());
  CHECK(k3.earlier[1] == std::vector<Vertex>{3});
  CHECK(k3.earlier[2] == std::vector<Vertex>{3, 2});
  CHECK(degeneracy_order(oracle::complete(4)).degeneracy == 3);
  CHECK(degeneracy_order(oracle::cycle(6)).degeneracy == 2);
  const auto p3 = degeneracy_order(oracle::graph(3, {{1, 2}, {2, 3}}));
  CHECK(p3.degeneracy == 1);
  for (std::size_t i = 1; i < p3.order.size(); ++i) CHECK(p3.earlier[i].size() == 1);
}

TEST_CASE("subgraph builder phases on a scripted K3") {
  // Phase for the third vertex needs two hits on the same unused vertex.
  const auto k3 = oracle::complete(3);
  const auto t = scripted(degenerate_subgraph_strategy(k3), subgraph_property(k3), 10, {5, 7, 7});
  CHECK(t.stopping_time == 3u);
  CHECK(t.steps[0].chosen == Edge(1, 5));
  CHECK(t.steps[1].chosen == Edge(1, 7));
  CHECK(t.steps[2].chosen == Edge(5, 7));
}

TEST_CASE("a path on three vertices is built in two steps almost surely") {
  const auto p3 = oracle::graph(3, {{1, 2}, {2, 3}});
  int two = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const auto t = run_process(Distribution::semi_random(1000), degenerate_subgraph_strategy(p3), subgraph_property(p3),
                               opts(100, trial));
    two += t.stopping_time == 2u;
  }
  CHECK(two >= 195);
}

TEST_CASE("boost_rounds") {
  CHECK(boost_rounds(0.75) == 2);
  CHECK(boost_rounds(0.5) == 1);
  CHECK(boost_rounds(0.875) == 3);
  CHECK(boost_rounds(0.1) == 1);
  CHECK_THROWS_AS(boost_rounds(1.0), UsageError);
}

TEST_CASE("one long block of boost matches the inner strategy") {
  const auto d = Distribution::semi_random(300);
  const auto boosted = multi_round_boost(min_degree_strategy(1), 100000, 1);
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const auto a = run_process(d, min_degree_strategy(1), min_degree_property(1), opts(5000, trial));
    const auto b = run_process(d, boosted, min_degree_property(1), opts(5000, trial));
    CHECK(a.stopping_time == b.stopping_time);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) CHECK(a.steps[i].chosen == b.steps[i].chosen);
  }
}

TEST_CASE("boost with blocks succeeding with probability 1/2 reaches 7/8 after three") {
  // One step per block on {{e1},{e2}}; a block succeeds iff it sees {e1}.
  const Edge e1(1, 2), e2(1, 3);
  const auto d = Distribution::explicit_subsets(3, {{{e1}, Rational(1, 2)}, {{e2}, Rational(1, 2)}});
  const auto boosted = multi_round_boost(min_degree_strategy(1), 1, 3);
  Rational success = 0;
  for (std::size_t mask = 0; mask < 8; ++mask) {
    auto s = boosted.make(d);
    ScriptedSource src(d, {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1});
    const auto t = run_with(d, *s, contains_edge_property(e1), src, opts(5), false);
    if (t.stopping_time) success += Rational(1, 8);
    if (!t.stopping_time) CHECK(t.gave_up);
  }
  CHECK(success == Rational(7, 8));
}

TEST_CASE("four blocks of 0.75 n reach min degree 1 at n = 1000") {
  const std::uint64_t m = 750;
  const auto boosted = multi_round_boost(min_degree_strategy(1), m, 4);
  RunOptions o = opts(4 * m);
  o.record_steps = false;
  int failures = 0, single_failures = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    o.trial = trial;
    failures += !run_process(Distribution::semi_random(1000), boosted, min_degree_property(1), o).stopping_time;
    RunOptions one = o;
    one.max_steps = m;
    single_failures +=
        !run_process(Distribution::semi_random(1000), min_degree_strategy(1), min_degree_property(1), one).stopping_time;
  }
  CHECK(failures <= 2);
  CHECK(failures <= single_failures);
}

TEST_CASE("approx-then-cleanup at n = 4 is a single stage") {
  // ceil(4^0.99) = 4 unsaturated vertices are allowed, so the approximate target holds at once.
  CHECK(approx_slack(4) == 4);
  const auto t =
      run_process(Distribution::semi_random(4), approx_then_cleanup(CleanupTarget::kMatching), perfect_matching_property(), opts(100));
  REQUIRE(t.markers.size() == 1);
  CHECK(t.markers[0] == std::pair<std::string, std::uint64_t>{"cleanup_start", 0});
  CHECK(t.stopping_time.has_value());
}

TEST_CASE("approx-then-cleanup reaches the full properties") {
  RunOptions o = opts(30000);
  o.record_steps = false;
  o.verify_every = 97;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    o.trial = trial;
    const auto m = run_process(Distribution::semi_random(2000), approx_then_cleanup(CleanupTarget::kMatching),
                               perfect_matching_property(), o);
    REQUIRE(m.stopping_time.has_value());
    REQUIRE(m.markers.size() == 1);
    CHECK(m.markers[0].second <= *m.stopping_time);
    const auto h = run_process(Distribution::semi_random(2000), approx_then_cleanup(CleanupTarget::kHamilton),
                               hamiltonian_property(), o);
    REQUIRE(h.stopping_time.has_value());
    CHECK(h.markers.at(0).second <= *h.stopping_time);
  }
}

TEST_CASE("cleanup_matching from a perfect matching needs no steps") {
  const auto d = Distribution::semi_random(6);
  const auto start = MatchingState::from_edges(6, {Edge(1, 2), Edge(3, 4), Edge(5, 6)});
  RunOptions o = opts(10);
  o.initial = oracle::graph(6, {{1, 2}, {3, 4}, {5, 6}});
  auto s = cleanup_matching(start);
  RandomSource src(d, 1, 0);
  CHECK(run_with(d, *s, perfect_matching_property(), src, o, false).stopping_time == 0u);
}

TEST_CASE("cleanup_matching with two unsaturated vertices dominates the direct-hit geometric law") {
  const Vertex n = 100;
  std::vector<Edge> m;
  for (Vertex i = 0; i < 49; ++i) m.emplace_back(2 * i + 1, 2 * i + 2);
  const auto start = MatchingState::from_edges(n, m);
  MultiGraph g(n);
  for (const Edge& e : m) g.add_edge(e);
  const auto d = Distribution::semi_random(n);
  const std::uint64_t trials = 2000;
  std::vector<std::uint64_t> times;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    RunOptions o = opts(20 * n, trial);
    o.initial = g;
    o.record_steps = false;
    auto s = cleanup_matching(start);
    RandomSource src(d, 1, trial);
    const auto t = run_with(d, *s, perfect_matching_property(), src, o, false);
    REQUIRE(t.stopping_time.has_value());
    times.push_back(*t.stopping_time);
  }
  for (std::uint64_t t : {10u, 25u, 50u, 100u, 200u}) {
    const auto done = static_cast<std::uint64_t>(std::count_if(times.begin(), times.end(), [t](auto x) { return x <= t; }));
    const double geometric = 1.0 - std::pow(1.0 - 2.0 / n, static_cast<double>(t));
    INFO("t = " << t);
    CHECK(wilson(done, trials, 3.0).hi >= geometric);
  }
}
