#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace invt {

/// Arbitrary-precision rational in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a" or "a/b" with optional surrounding blanks.
Rational parse_rational(std::string_view text);

/// "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& q);

/// Terms (coefficient, exponent) of a univariate polynomial string such as
/// "3/2*z^3 - z + 1/2" in the given variable. Repeated exponents are summed.
std::vector<std::pair<Rational, long long>> parse_univariate_terms(std::string_view text, char var);

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

}  // namespace invt
