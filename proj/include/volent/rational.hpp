#pragma once

#include <gmpxx.h>

#include <string>

#include "volent/errors.hpp"

namespace volent {

/// Exact rational scalar. GMP-backed so determinants and distance sums never
/// overflow.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (decimal integers). Throws IoError on anything else.
inline Rational parse_rational(const std::string& text) {
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw IoError("not a rational: '" + text + "'");
  }
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace volent
