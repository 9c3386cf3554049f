#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace twist {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(std::string_view text);

Rational make_rational(long num, long den = 1);

BigInt ipow(long base, unsigned long exponent);
Rational rpow(const Rational& base, unsigned long exponent);

long gcd(long a, long b);
long lcm(long a, long b);
/// Least non-negative residue.
long mod(long a, long m);

}  // namespace twist
