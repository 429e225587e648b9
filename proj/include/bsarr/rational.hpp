#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bsarr {

/// Exact rational number. GMP keeps mpq_class canonical (reduced, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a", "a/b" (also accepts the unicode minus sign U+2212).
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace bsarr
