#pragma once

#include <gmpxx.h>

#include <string>

namespace treehom {

// All counting and certificate arithmetic is exact. Counts are arbitrary
// precision integers, bounds are arbitrary precision rationals kept in
// lowest terms with a positive denominator.
using BigInt = mpz_class;
using Rational = mpq_class;

// Builds num/den in canonical form. Throws invalid_argument_error when den is zero.
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts "num" or "num/den" in base 10, optionally signed.
Rational parse_rational(const std::string& text);
BigInt parse_bigint(const std::string& text);

// Always emits the explicit "num/den" form so documents stay byte stable.
std::string format_rational(const Rational& q);
std::string format_bigint(const BigInt& n);

// Largest multiple of 1/denom that is <= q (round_down), smallest >= q
// (round_up). Used to coarsen interval endpoints without losing the bound
// direction before forming large powers.
Rational round_down(const Rational& q, const BigInt& denom);
Rational round_up(const Rational& q, const BigInt& denom);

Rational rational_pow(const Rational& q, unsigned long e);
BigInt bigint_pow(const BigInt& base, unsigned long e);
Rational rational_abs(const Rational& q);

} // namespace treehom
