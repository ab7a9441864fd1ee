#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chenbar {

// mpq_class keeps every value canonical (lowest terms, positive denominator)
// after each arithmetic operation.
using Rational = mpq_class;

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

// Accepts "p" or "p/q" with an optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q)
{
    return sgn(q) == 0;
}

} // namespace chenbar
