#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qmf {

using Integer = mpz_class;
// mpq_class keeps values canonical (lowest terms, positive denominator)
// as long as construction goes through canonicalize().
using Rational = mpq_class;

// "p" or "p/q", lowest terms, no whitespace.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
// Throws DomainError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer ipow(const Integer& base, unsigned long exp);
Integer ipow(long base, unsigned long exp);
// base^exp for possibly negative exp; base must be nonzero when exp < 0.
Rational rpow(const Rational& base, long exp);

}  // namespace qmf
