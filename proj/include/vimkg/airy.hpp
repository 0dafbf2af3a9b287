// Reference solution of phi'' + r*phi + phi = 0, phi(0)=1, phi'(0)=0 as an
// exact power series. The coefficients satisfy
//   a_0 = 1, a_1 = 0, a_2 = -1/2,
//   a_k = -(a_{k-3} + a_{k-2}) / (k (k-1))   for k >= 3  (a_{-1} := 0),
// a shifted Airy-type recursion. The series is entire; a three-term decay
// test controls evaluation accuracy.
#pragma once

#include "polynomial.hpp"
#include "rational.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vimkg {

struct InsufficientOrderError : std::runtime_error {
    explicit InsufficientOrderError(const std::string& what)
        : std::runtime_error(what) {}
};

class AirySeries {
  public:
    explicit AirySeries(std::vector<Rational> coeffs)
        : a_(std::move(coeffs)) {
        d_.reserve(a_.size());
        for (const auto& q : a_) d_.push_back(q.get_d());
    }

    int order() const { return static_cast<int>(a_.size()) - 1; }

    const Rational& coeff(std::size_t k) const {
        static const Rational zero(0);
        return k < a_.size() ? a_[k] : zero;
    }

    const std::vector<Rational>& coeffs() const { return a_; }
    const std::vector<double>& coeffs_double() const { return d_; }

    // The exact partial sum as a polynomial, truncated at max_degree.
    UniPoly partial_sum(int max_degree) const {
        std::vector<Rational> v;
        const std::size_t n =
            std::min(a_.size(), static_cast<std::size_t>(max_degree + 1));
        v.assign(a_.begin(), a_.begin() + n);
        return UniPoly(std::move(v));
    }

  private:
    std::vector<Rational> a_;
    std::vector<double> d_;
};

inline AirySeries airy_coeffs(int K) {
    if (K < 0) throw std::domain_error("airy_coeffs: K must be >= 0");
    std::vector<Rational> a(static_cast<std::size_t>(K) + 1, Rational(0));
    a[0] = 1;
    if (K >= 2) a[2] = make_rational(-1, 2);
    for (int k = 3; k <= K; ++k)
        a[k] = -(a[k - 3] + a[k - 2]) / Rational(static_cast<long>(k) * (k - 1));
    return AirySeries(std::move(a));
}

// Largest |coefficient| of phi'' + r*phi + phi among indices 0 .. K-2 (the
// indices fully determined by a series of order K). Exactly zero when the
// coefficients satisfy the recursion.
inline Rational residual_check(const AirySeries& series) {
    if (series.order() < 3)
        throw std::domain_error("residual_check: series order must be >= 3");
    const UniPoly phi(series.coeffs());
    const UniPoly res = phi.second_derivative() + phi.shifted(1) + phi;
    Rational m(0);
    for (int d = 0; d <= series.order() - 2; ++d) {
        Rational v = rational_abs(res.coeff(static_cast<std::size_t>(d)));
        if (v > m) m = v;
    }
    return m;
}

// Three-term decay test at the series tail: the last term must be below
// tail_tol and below the term three indices earlier (the recursion couples
// lags 2 and 3), with exact zeros accepted.
inline bool airy_tail_ok(const AirySeries& series, double r, double tail_tol) {
    const int K = series.order();
    if (K < 3) return false;
    const double ar = std::abs(r);
    const double tail = std::abs(series.coeffs_double()[K]) * std::pow(ar, K);
    const double prev = std::abs(series.coeffs_double()[K - 3]) * std::pow(ar, K - 3);
    return tail < tail_tol && (tail == 0.0 || tail < prev);
}

// Fixed-order floating evaluation: sum of a_k r^k for k = 0 .. K, ascending.
// Signals InsufficientOrderError when the decay test fails at order K.
inline double airy_eval(const AirySeries& series, double r, double tail_tol) {
    if (!airy_tail_ok(series, r, tail_tol))
        throw InsufficientOrderError(
            "airy_eval: insufficient order K=" + std::to_string(series.order()) +
            " for r=" + std::to_string(r));
    const std::vector<double>& c = series.coeffs_double();
    double acc = 0.0;
    double rk = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        acc += c[k] * rk;
        rk *= r;
    }
    return acc;
}

// Exact rational partial sum at an exact point (acceptance-grade variant).
inline Rational airy_eval_exact(const AirySeries& series, const Rational& r) {
    return UniPoly(series.coeffs()).eval(r);
}

// Smallest-effort series whose tail passes the decay test at |r| = R.
inline AirySeries airy_series_for(double R, double tail_tol, int start_order = 16) {
    int K = std::max(start_order, 4);
    for (int tries = 0; tries < 64; ++tries) {
        AirySeries s = airy_coeffs(K);
        if (airy_tail_ok(s, R, tail_tol)) return s;
        K += std::max(8, K / 2);
    }
    throw InsufficientOrderError("airy_series_for: no adequate order found");
}

// Maximum |a_k| over the series (the coefficients are bounded by 1).
inline Rational max_abs_airy_coeff(const AirySeries& series) {
    Rational m(0);
    for (const auto& q : series.coeffs()) {
        Rational a = rational_abs(q);
        if (a > m) m = a;
    }
    return m;
}

} // namespace vimkg
