#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cardvote {

// Exact rational used for every utility and probability.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws PreconditionError on den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p", "p/q", or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Largest t with t^3 <= x. Exact; never goes through floating point.
std::int64_t icbrt(std::int64_t x);

/// floor(m^{1/3}) and floor(m^{2/3}).
inline std::int64_t floor_cbrt(std::int64_t m) { return icbrt(m); }
inline std::int64_t floor_cbrt_sq(std::int64_t m) { return icbrt(m * m); }

}  // namespace cardvote
