#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace polyinv {

// Exact arithmetic lives on GMP. mpq_class keeps fractions canonical
// (positive denominator, coprime parts) through all arithmetic; the only
// care point is canonicalize() after building a value from raw parts.
using Integer = mpz_class;
using Rational = mpq_class;

using Point = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "-3", "22/7". Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Formats as "-3" or "22/7" (the exact-number wire format used in reports).
std::string to_string(const Rational& q);

std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace polyinv
