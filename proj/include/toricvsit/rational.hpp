#ifndef TORICVSIT_RATIONAL_HPP
#define TORICVSIT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace ToricVSIT {

/** Arbitrary-precision integer (GMP-backed). */
using Int = boost::multiprecision::mpz_int;

/** Arbitrary-precision rational, always kept canonical (gcd 1, positive
 *  denominator) by the GMP backend.  All core computations run on this type;
 *  floating point appears only at render time. */
using Rat = boost::multiprecision::mpq_rational;

/** Raised when textual input (fan files, divisor vectors, flag values)
 *  cannot be parsed. */
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what = "") : std::runtime_error(what) {}
};

/** Parse "p" or "p/q" with optional leading minus into a rational.
 *  Throws ParseError on malformed text or a zero denominator. */
inline Rat parse_rat(const std::string& text) {
  const char* s = text.c_str();
  std::size_t i = 0, n = text.size();
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < n && s[j] >= '0' && s[j] <= '9') ++j;
    return j;
  };
  if (i < n && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t after_num = digits(i);
  if (after_num == i) throw ParseError("invalid rational: '" + text + "'");
  std::string num_text = text.substr(0, after_num);
  if (num_text[0] == '+') num_text.erase(0, 1);
  i = after_num;
  if (i == n) return Rat(Int(num_text));
  if (s[i] != '/') throw ParseError("invalid rational: '" + text + "'");
  std::size_t den_start = ++i;
  if (i < n && s[i] == '+') ++i;
  std::size_t after_den = digits(i);
  if (after_den != n || after_den == den_start)
    throw ParseError("invalid rational: '" + text + "'");
  std::string den_text = text.substr(den_start);
  if (den_text[0] == '+') den_text.erase(0, 1);
  Int den(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + text + "'");
  // exact division canonicalizes; string-constructing the quotient directly
  // can leave a non-reduced fraction behind
  return Rat(Int(num_text)) / Rat(den);
}

/** Render a rational as "p" (integer) or "p/q". */
inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace ToricVSIT

#endif  // TORICVSIT_RATIONAL_HPP
