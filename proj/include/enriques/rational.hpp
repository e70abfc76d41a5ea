#pragma once

#include "enriques/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <regex>
#include <string>
#include <vector>

namespace enriques {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

inline Integer numerator(const Rational &q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational &q) {
  return boost::multiprecision::denominator(q);
}
inline bool is_integer(const Rational &q) { return denominator(q) == 1; }

inline Integer abs_int(const Integer &a) { return a < 0 ? Integer(-a) : a; }

// floor division for Integer with positive divisor
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

inline Integer floor(const Rational &q) {
  return floor_div(numerator(q), denominator(q));
}

// Fractional part in [0,1).
inline Rational frac(const Rational &q) { return q - Rational(floor(q)); }

inline std::string to_string(const Rational &q) {
  if (is_integer(q))
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Grammar: -?[0-9]+(/[1-9][0-9]*)? with the fraction in lowest terms.
inline Rational parse_rational(const std::string &s) {
  static const std::regex grammar("-?[0-9]+(/[1-9][0-9]*)?");
  if (!std::regex_match(s, grammar))
    throw input_error("malformed rational \"" + s + "\"");
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(Integer(s));
  Integer p(s.substr(0, slash));
  Integer q(s.substr(slash + 1));
  if (boost::multiprecision::gcd(abs_int(p), q) != 1)
    throw input_error("rational \"" + s + "\" is not in lowest terms");
  return Rational(p, q);
}

inline RationalVector to_rational(const IntegerVector &v) {
  return RationalVector(v.begin(), v.end());
}

} // namespace enriques
