#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace frameforge {

using Rational = mpq_class;

/// Parses `p/q`, a plain integer, or a decimal literal (`-0.125`, `3e-2`) into
/// an exact rational. Decimal literals are read by their decimal value.
Rational parse_rational(std::string_view text);

/// True for `p/q` and plain integer literals.
bool is_rational_literal(std::string_view text) noexcept;

/// `p/q` in lowest terms, or `p` when the denominator is one.
std::string format_rational(const Rational& q);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

double parse_double(std::string_view text);

}  // namespace frameforge
