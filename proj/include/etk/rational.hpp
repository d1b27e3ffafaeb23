#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace etk {

/// Exact rational scalar, always in lowest terms with positive denominator.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws on a zero denominator.
inline Rational frac(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("frac: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" (base 10). Throws on malformed input or q = 0.
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

/// Canonical decimal rendering: "p" for integers, otherwise "p/q" with q > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace etk
