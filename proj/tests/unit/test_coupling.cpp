#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "aplab/errors.hpp"
#include "aplab/martingale.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

Factor uniform(std::size_t s) {
  Factor f;
  for (std::size_t i = 0; i < s; ++i) {
    f.labels.push_back(std::to_string(i));
    f.probabilities.push_back(Rational(1, static_cast<long>(s)));
  }
  return f;
}

DiscreteMartingale k1_example() {
  DiscreteMartingale m;
  m.space = FiniteProductSpace({uniform(1), uniform(2)});
  m.values = {{Rational(1, 2)}, {Rational(0), Rational(1)}};
  m.c = {Rational(2, 5)};
  return m;
}

// +-step walk of k steps from 0; level j is the partial sum.
DiscreteMartingale walk(std::size_t k, const Rational& step) {
  std::vector<Factor> f{uniform(1)};
  for (std::size_t j = 0; j < k; ++j) f.push_back(uniform(2));
  DiscreteMartingale m;
  m.space = FiniteProductSpace(f);
  m.values.resize(k + 1);
  m.values[0] = {Rational(0)};
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t idx = 0; idx < m.space.prefix_count(j + 1); ++idx) {
      const Rational parent = m.values[j - 1][idx / 2];
      m.values[j].push_back(idx % 2 ? Rational(parent + step) : Rational(parent - step));
    }
  }
  m.c.assign(k, 2 * step);
  return m;
}

}  // namespace

TEST_CASE("k = 1 example") {
  const auto m = k1_example();
  CHECK(is_martingale(m));
  CHECK_FALSE(is_balanced(m));
  CHECK(stable_sequences(m) == std::vector<bool>{false, true});

  const auto r = couple_balanced(m);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].gamma == Rational(1, 4));
  CHECK(r.records[0].small == std::vector<std::size_t>{0});
  CHECK(r.coupled.values[1] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(check_coupling(m, r).all());

  const auto v = oracle::check_coupling(m, r.coupled);
  CHECK((v.q1 && v.q2 && v.q3 && v.martingale));
}

TEST_CASE("balanced input is left alone") {
  auto m = k1_example();
  m.c = {Rational(1)};
  CHECK(is_balanced(m));
  const auto r = couple_balanced(m);
  CHECK(r.records.empty());
  CHECK(r.coupled.values == m.values);
  CHECK(stable_sequences(m) == std::vector<bool>{true, true});
}

TEST_CASE("constant martingale") {
  DiscreteMartingale m;
  m.space = FiniteProductSpace({uniform(2), uniform(3), uniform(2)});
  m.values = {std::vector<Rational>(2, Rational(3)), std::vector<Rational>(6, Rational(3)),
              std::vector<Rational>(12, Rational(3))};
  m.c = {Rational(0), Rational(0)};
  CHECK(is_martingale(m));
  CHECK(is_balanced(m));
  const auto rep = tail_bound_check(m, Rational(1));
  CHECK(rep.lhs == 0);
  CHECK(rep.holds);
}

TEST_CASE("500 random martingales against the brute-force coupling checker") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> depth(1, 5);
  int coupled_somewhere = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t k = depth(rng);
    const auto m = oracle::random_martingale(rng, k, k <= 3 ? 4 : 3);
    REQUIRE(oracle::tower(m));
    REQUIRE(is_martingale(m));
    CHECK(is_balanced(m) == oracle::balanced(m));
    const auto r = couple_balanced(m);
    coupled_somewhere += !r.records.empty();
    const auto v = oracle::check_coupling(m, r.coupled);
    INFO("martingale " << rep << " k=" << k);
    CHECK(v.q1);
    CHECK(v.q2);
    CHECK(v.q3);
    CHECK(v.martingale);
    const auto lib = check_coupling(m, r);
    CHECK(lib.all() == (v.q1 && v.q2 && v.q3 && v.martingale));
  }
  CHECK(coupled_somewhere >= 250);
}

TEST_CASE("tail bound on random martingales") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> depth(1, 4);
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = oracle::random_martingale(rng, depth(rng), 3);
    const auto t = oracle::random_rational(rng, 0, 3, 4);
    const auto r = tail_bound_check(m, t);
    INFO("martingale " << rep << " t=" << to_string(t));
    CHECK(r.lhs == oracle::lower_tail(m, t));
    CHECK(r.unstable_mass == oracle::unstable_mass(m));
    double sum_c2 = 0;
    for (const auto& c : m.c) sum_c2 += c.get_d() * c.get_d();
    const double e = sgn(t) == 0 ? 1.0 : (sum_c2 == 0 ? 0.0 : std::exp(-2 * t.get_d() * t.get_d() / sum_c2));
    CHECK(r.exp_term == Catch::Approx(e).margin(1e-12));
    CHECK(r.lhs.get_d() <= e + r.unstable_mass.get_d() + 1e-9);
    CHECK(r.holds);
    CHECK(r.coupled_holds);
  }
}

TEST_CASE("+-c walk: exact binomial tail under the exponential") {
  const Rational step(1, 3);
  const auto m = walk(5, step);
  REQUIRE(is_martingale(m));
  REQUIRE(is_balanced(m));
  for (long s = 0; s <= 5; ++s) {
    // M_5 = step (2X - 5) <= -t with t = step * s, i.e. X <= (5 - s) / 2.
    const Rational t = step * s;
    const auto r = tail_bound_check(m, t);
    const long x = (5 - s) >= 0 ? (5 - s) / 2 : -1;
    CHECK(r.lhs == oracle::binomial_half_cdf(5, x));
    CHECK(r.unstable_mass == 0);
    CHECK(r.holds);
    CHECK(r.coupled_lhs == r.lhs);
  }
}

TEST_CASE("balanced martingales have bounded increments") {
  std::mt19937_64 rng(13);
  int seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto m = oracle::random_martingale(rng, 3, 3);
    const auto mp = couple_balanced(m).coupled;
    REQUIRE(is_balanced(mp));
    ++seen;
    for (std::size_t j = 1; j <= mp.k(); ++j) {
      const std::size_t s = mp.space.factor(j).size();
      for (std::size_t idx = 0; idx < mp.values[j].size(); ++idx) {
        Rational d = mp.values[j][idx] - mp.values[j - 1][idx / s];
        if (sgn(d) < 0) d = -d;
        CHECK(d <= mp.c[j - 1]);
      }
    }
  }
  CHECK(seen == 300);
}

TEST_CASE("tail check at t = 0 and errors") {
  const auto m = k1_example();
  const auto r = tail_bound_check(m, Rational(0));
  CHECK(r.exp_term == 1.0);
  CHECK(r.lhs == Rational(1, 2));
  CHECK(r.holds);
  CHECK_THROWS_AS(tail_bound_check(m, Rational(-1, 2)), UsageError);

  auto bad = m;
  bad.values[1].pop_back();
  CHECK_THROWS_AS(validate_shape(bad), DataError);
  bad = m;
  bad.c = {Rational(-1)};
  CHECK_THROWS_AS(validate_shape(bad), DataError);
  bad = m;
  bad.values[1][0] = Rational(5);
  CHECK_FALSE(is_martingale(bad));
}
