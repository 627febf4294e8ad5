#include <catch_amalgamated.hpp>

#include "aplab/errors.hpp"
#include "aplab/rational.hpp"

using namespace aplab;

TEST_CASE("parse_rational canonicalizes") {
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-3/9") == Rational(-1, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("8/4")) == "2");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("parse_rational rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), DataError);
  CHECK_THROWS_AS(parse_rational("1/0"), DataError);
  CHECK_THROWS_AS(parse_rational("0.5"), DataError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), DataError);
  CHECK_THROWS_AS(parse_rational("a/b"), DataError);
}

TEST_CASE("square-root comparisons stay exact") {
  // sqrt(1/64) = 1/8
  CHECK(exceeds_sqrt(Rational(1, 7), Rational(1, 64)));
  CHECK_FALSE(exceeds_sqrt(Rational(1, 8), Rational(1, 64)));
  CHECK(at_least_sqrt(Rational(1, 8), Rational(1, 64)));
  CHECK_FALSE(at_least_sqrt(Rational(1, 9), Rational(1, 64)));
  // sqrt(2) sits strictly between 1414/1000 and 1415/1000
  CHECK(exceeds_sqrt(Rational(1415, 1000), Rational(2)));
  CHECK_FALSE(exceeds_sqrt(Rational(1414, 1000), Rational(2)));
  // negative deltas never exceed
  CHECK_FALSE(exceeds_sqrt(Rational(-1), Rational(0)));
  CHECK(at_least_sqrt(Rational(0), Rational(0)));
  CHECK_FALSE(exceeds_sqrt(Rational(0), Rational(0)));
}
