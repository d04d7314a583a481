#pragma once

#include <gmpxx.h>

#include <string>

namespace shufflekit {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_rational_string(const Rational& q);

/// Decimal rendering with `significant_digits` significant digits,
/// rounded from a 128-bit-padded binary approximation of the exact value.
std::string to_decimal_string(const Rational& q, int significant_digits = 12);

double to_double(const Rational& q);

/// C(top, k) for top >= 0; zero when k > top.
BigInt binomial(const BigInt& top, unsigned long k);

}  // namespace shufflekit
