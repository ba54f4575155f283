#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ivtest {

/// Exact rational number, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
/// Arbitrary-precision integer.
using BigInt = mpz_class;

using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal such as "0.25", "-1.5e-3".
/// The conversion is exact; throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Approximate decimal rendering, for human-facing reports only.
double to_double(const Rational& value);

/// b^e for machine-sized arguments.
BigInt big_pow(std::uint64_t base, std::uint64_t exponent);

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

BigInt factorial(std::uint64_t n);

}  // namespace ivtest
