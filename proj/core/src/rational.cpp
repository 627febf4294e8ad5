#include "aplab/rational.hpp"

#include <cctype>

#include "aplab/errors.hpp"

namespace aplab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw DataError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw DataError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool exceeds_sqrt(const Rational& delta, const Rational& bound_squared) {
  if (sgn(delta) <= 0) return false;
  return delta * delta > bound_squared;
}

bool at_least_sqrt(const Rational& delta, const Rational& bound_squared) {
  if (sgn(bound_squared) == 0) return sgn(delta) >= 0;
  if (sgn(delta) <= 0) return false;
  return delta * delta >= bound_squared;
}

}  // namespace aplab
