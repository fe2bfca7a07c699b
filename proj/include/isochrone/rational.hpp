#pragma once

#include "isochrone/errors.hpp"

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isochrone {

/// Exact rational number; GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n", "n/d" or a plain decimal literal such as "0.25".
Rational parse_rational(std::string_view text);

/// "n" when the denominator is one, "n/d" otherwise.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double v);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace isochrone
