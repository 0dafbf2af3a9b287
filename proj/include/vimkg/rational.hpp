// Exact arbitrary-precision rationals: a thin contract layer over GMP's
// mpq_class. Canonical form (positive denominator, gcd(|num|, den) = 1) is
// maintained by every gmpxx arithmetic operation; the helpers here pin the
// construction and serialization conventions used across the library.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace vimkg {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical rational from an integer pair; rejects zero denominators.
inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

// Serialization: "num/den", with "/den" omitted when den == 1.
inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Inverse of rational_to_string; accepts "n" and "n/d" forms.
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational_from_string: bad literal '" + s + "'");
    if (q.get_den() == 0)
        throw std::domain_error("rational_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// True when the value is in canonical form (den > 0, reduced). gmpxx keeps
// results canonical, so this is a checkable invariant rather than a fixup.
inline bool is_canonical(const Rational& q) {
    if (q.get_den() <= 0) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return g == 1;
}

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// Exact power with nonnegative integer exponent.
inline Rational rational_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace vimkg
