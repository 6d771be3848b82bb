#ifndef IHQ_RATIONAL_HPP
#define IHQ_RATIONAL_HPP

/* Exact rational coefficients. Backed by boost::multiprecision so that
 * products of weights and fraction-free elimination never overflow; values
 * are always kept in lowest terms with positive denominator. */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ihq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw ParseError("rational with zero denominator");
  return Rational(Int(num)) / Rational(Int(den));
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/* Accepts "p" or "p/q" with optional leading minus signs; normalizes. */
inline Rational parse_rational(const std::string& text) {
  auto is_int_token = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int_token(text)) throw ParseError("bad rational '" + text + "'");
      return Rational(Int(text));
    }
    const std::string p = text.substr(0, slash), q = text.substr(slash + 1);
    if (!is_int_token(p) || !is_int_token(q))
      throw ParseError("bad rational '" + text + "'");
    Int den(q);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(Int(p)) / Rational(den);
  } catch (const std::runtime_error&) {
    throw ParseError("bad rational '" + text + "'");
  }
}

/* Canonical form: lowest terms, "p" when integral, "p/q" otherwise. */
inline std::string format_rational(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace ihq

#endif
