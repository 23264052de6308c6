#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cobcalc {

using Rational = mpq_class;

/// Canonical "p/q" (or "p" when q == 1) form, GMP's own formatting.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q" with q != 0. Throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

}  // namespace cobcalc
