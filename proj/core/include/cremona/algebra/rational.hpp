#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace cremona {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(const std::string& text);

}  // namespace cremona
