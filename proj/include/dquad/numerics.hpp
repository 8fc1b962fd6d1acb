#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dquad {

// Exact arbitrary-precision integer / rational types. Everything integer in
// this library is a BigInt; magnitudes run past 10^2000 in the bound solvers.
using BigInt = mpz_class;
using Rational = mpq_class;

/// floor(sqrt(n)); throws std::domain_error for n < 0.
BigInt isqrt(const BigInt& n);

/// Root r with r*r == n when n is a perfect square and n >= 0, empty otherwise.
std::optional<BigInt> is_perfect_square(const BigInt& n);

/// Parse a decimal literal ("0.09226", "8.4034e13", "-3.5") into an exact
/// rational. No binary rounding is involved at any point.
Rational rational_from_decimal(std::string_view s);

inline BigInt big(long v) { return BigInt(v); }
inline BigInt big(std::string_view s) { return BigInt(std::string(s), 10); }

/// 10^e as an exact integer, e >= 0.
BigInt pow10(unsigned e);

}  // namespace dquad
