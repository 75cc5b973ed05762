#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace mcoe {

/// Exact rational number; always kept in lowest terms with a positive
/// denominator by the GMP backend.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical text form "p/q", or just "p" for an integer.
std::string to_string(const Rational& value);

/// Parses "p/q" or a bare integer "p". Rejects fractions that are not in
/// lowest terms, zero or negative denominators, and stray characters.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

}  // namespace mcoe
