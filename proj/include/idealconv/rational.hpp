#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace idealconv {

/// Positions in ω = {1, 2, 3, ...}. Signed so that differences stay simple.
using nat = std::int64_t;

/// Exact rational numbers. Values of sequences and densities are always exact.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", "p" or "-p/q". Throws SchemaError on malformed input.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Rational abs(const Rational& q);

/// Largest integer <= q.
BigInt floor(const Rational& q);

double to_double(const Rational& q);

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) { return Rational(p) / q; }

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// b^e mod m for m >= 1, b >= 0.
std::int64_t powmod64(std::int64_t b, std::int64_t e, std::int64_t m);

/// floor(n^(1/p)) computed exactly.
std::int64_t iroot(std::int64_t n, int p);

/// n^p, or -1 if the result exceeds 2^62.
std::int64_t ipow_capped(std::int64_t n, int p);

} // namespace idealconv
