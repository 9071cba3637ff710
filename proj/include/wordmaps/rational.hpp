#ifndef WORDMAPS_RATIONAL_HPP_
#define WORDMAPS_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdio>
#include <string>

namespace wordmaps {

  // Arbitrary-precision rational, always kept canonical.
  using Rational = mpq_class;

  inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // "p/q", or "p" when the denominator is one.
  inline std::string to_string(Rational const& q) {
    return q.get_str();
  }

  inline std::string numerator_string(Rational const& q) {
    return q.get_num().get_str();
  }

  inline std::string denominator_string(Rational const& q) {
    return q.get_den().get_str();
  }

  // 15 significant digits, printf %g style.
  inline std::string to_decimal(Rational const& q, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, q.get_d());
    return buf;
  }

}  // namespace wordmaps

#endif  // WORDMAPS_RATIONAL_HPP_
