// Exact arithmetic helpers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fgv {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Rational n/k, canonicalized.
Rational make_ratio(std::int64_t num, std::int64_t den);

/// Largest integer <= x.
BigInt floor_of(const Rational& x);
inline double floor_of(double x) { return std::floor(x); }

/// Exact parse of "p", "p/q", or a finite decimal such as "-0.25" or "1.5e-3".
std::optional<Rational> parse_rational(std::string_view text);

/// Nearest double (ties to even). GMP's own conversion truncates.
double to_double(const Rational& x);

/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& x);

/// Shortest decimal that round-trips to the same double.
std::string to_string_roundtrip(double x);

/// Exact integer square root when x is a perfect square of a rational.
std::optional<Rational> exact_sqrt(const Rational& x);

/// Integer power; a negative exponent inverts the base.
Rational pow_int(const Rational& base, long exponent);

}  // namespace fgv
