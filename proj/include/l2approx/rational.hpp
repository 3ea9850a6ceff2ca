#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace l2approx {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3/4", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

double to_double(const Rational& q);

/// Upper bound for |q| as a double (+inf when out of range).
double abs_upper(const Rational& q);

/// ln|q| for arbitrarily large or small nonzero q.
double log_abs(const Rational& q);
double log_abs(const Integer& z);

/// num/den in lowest terms; throws when den == 0.
Rational ratio(const Integer& num, const Integer& den);

Integer lcm(const Integer& a, const Integer& b);

/// Exact rational equal to the binary value of x.
Rational from_double(double x);

/// Nearest dyadic rational with `bits` significant bits (round to nearest).
Rational round_to_bits(const Rational& q, int bits);

}  // namespace l2approx
