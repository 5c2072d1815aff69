#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gtbound {

using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

/// Exact binary value of a finite double.
Rational rational_from_double(double x);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);

}  // namespace gtbound
