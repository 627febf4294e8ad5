#include <catch_amalgamated.hpp>

#include "aplab/certificates.hpp"
#include "aplab/errors.hpp"
#include "oracles.hpp"

using namespace aplab;

TEST_CASE("matching bookkeeping") {
  MatchingState m(6);
  m.match(1, 2);
  CHECK(m.mate(1) == 2);
  CHECK(m.size() == 1);
  CHECK(m.unsaturated() == std::set<Vertex>{3, 4, 5, 6});
  CHECK_THROWS_AS(m.match(2, 3), ContractViolation);
  m.unmatch(2);
  CHECK(m.size() == 0);
  CHECK_THROWS_AS(m.unmatch(1), ContractViolation);
}

TEST_CASE("length-3 augmentation swaps one matching edge for two") {
  // M = {(u,w)}; recorded (u,v); square w picks v'.
  const Vertex u = 1, w = 2, v = 3, v2 = 4;
  MatchingState m(4);
  m.match(u, w);
  m.set_record(u, v);
  CHECK(m.record_valid(u));
  m.augment(u, w, v, v2);
  CHECK(m.edges() == std::vector<Edge>{Edge(1, 3), Edge(2, 4)});
  CHECK_FALSE(m.record_valid(u));
  const auto g = oracle::graph(4, {{1, 2}, {1, 3}, {2, 4}});
  CHECK(m.verify(g));
  CHECK_THROWS_AS(m.augment(1, 4, 2, 3), ContractViolation);
}

TEST_CASE("matching verify catches edges missing from the graph") {
  const auto m = MatchingState::from_edges(4, {Edge(1, 2), Edge(3, 4)});
  CHECK(m.verify(oracle::graph(4, {{1, 2}, {3, 4}})));
  CHECK_FALSE(m.verify(oracle::graph(4, {{1, 2}})));
  CHECK_FALSE(m.verify(oracle::graph(5, {{1, 2}, {3, 4}})));
}

TEST_CASE("path joins and insertions") {
  PathSystemState p(6);
  p.add_singleton(1);
  p.add_singleton(2);
  p.add_singleton(3);
  p.add_singleton(4);
  p.join(1, 2);
  p.join(3, 4);
  const auto id = p.join(2, 3);  // paths 1-2 and 3-4 merge at 2,3
  const auto walk = p.order(id);
  CHECK((walk == std::vector<Vertex>{1, 2, 3, 4} || walk == std::vector<Vertex>{4, 3, 2, 1}));
  CHECK(p.longest_path_edges() == 3);
  CHECK(p.is_endpoint(1));
  CHECK_FALSE(p.is_endpoint(2));
  CHECK_THROWS_AS(p.join(1, 4), ContractViolation);

  p.insert_between(2, 3, 5);
  const auto after = p.order(p.path_of(1));
  CHECK((after == std::vector<Vertex>{1, 2, 5, 3, 4} || after == std::vector<Vertex>{4, 3, 5, 2, 1}));
  CHECK(p.longest_path_edges() == 4);
  CHECK_THROWS_AS(p.insert_between(1, 3, 6), ContractViolation);

  CHECK(p.verify(oracle::graph(6, {{1, 2}, {2, 5}, {5, 3}, {3, 4}})));
  CHECK_FALSE(p.verify(oracle::graph(6, {{1, 2}, {2, 3}, {3, 4}})));
}

TEST_CASE("closing edge certificate") {
  const auto paths = PathSystemState::from_paths(4, {{1, 2, 3, 4}});
  Certificate cert;
  cert.paths = &paths;
  cert.closing_edge = Edge(1, 4);
  CHECK(verify_certificate(cert, oracle::cycle(4)));
  CHECK_FALSE(verify_certificate(cert, oracle::graph(4, {{1, 2}, {2, 3}, {3, 4}})));
  cert.closing_edge = Edge(1, 3);
  CHECK_FALSE(verify_certificate(cert, oracle::complete(4)));
}

TEST_CASE("embedding certificate") {
  const auto h = oracle::complete(3);
  const std::vector<Vertex> img{0, 2, 4, 5};
  Certificate cert;
  cert.embedding = &img;
  cert.pattern = &h;
  CHECK(verify_certificate(cert, oracle::graph(5, {{2, 4}, {4, 5}, {2, 5}})));
  CHECK_FALSE(verify_certificate(cert, oracle::graph(5, {{2, 4}, {4, 5}})));
  const std::vector<Vertex> clash{0, 2, 2, 5};
  cert.embedding = &clash;
  CHECK_FALSE(verify_certificate(cert, oracle::complete(5)));
}
