#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "ibody/errors.hpp"

namespace ibody {

// Exact arbitrary-precision rational; always stored reduced with positive
// denominator (the backend maintains both invariants).
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline int sign_of(const Rat& v) {
    return v.sign();
}

inline Int numerator_of(const Rat& v) {
    return boost::multiprecision::numerator(v);
}

inline Int denominator_of(const Rat& v) {
    return boost::multiprecision::denominator(v);
}

// Parses "p", "-p", or "p/q" with integer p, q. Anything else (floats,
// whitespace inside the number, q = 0) is rejected.
Rat parse_rat(const std::string& text);

// "p" when integral, otherwise "p/q"; exact, suitable for JSON round-trips.
std::string rat_to_string(const Rat& v);

// Decimal rendering with `significant` significant digits, trailing zeros
// trimmed ("4", "1.33333333333"). The one deliberately lossy conversion in
// the project; used only for OBJ output.
std::string rat_to_decimal(const Rat& v, int significant = 12);

} // namespace ibody
