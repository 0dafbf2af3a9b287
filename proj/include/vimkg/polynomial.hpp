// Dense univariate polynomials over exact rationals. Coefficients are
// indexed by power; the zero polynomial is the empty sequence and has
// degree -1. The stored leading coefficient of a nonzero polynomial is
// always nonzero (normalized form).
#pragma once

#include "rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace vimkg {

class UniPoly {
  public:
    UniPoly() = default;

    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        normalize();
    }

    UniPoly(std::initializer_list<Rational> coeffs)
        : c_(coeffs.begin(), coeffs.end()) {
        normalize();
    }

    static UniPoly constant(const Rational& v) {
        return UniPoly(std::vector<Rational>{v});
    }

    // x^p with coefficient c.
    static UniPoly monomial(const Rational& c, std::size_t p) {
        if (c == 0) return UniPoly();
        std::vector<Rational> v(p + 1);
        v[p] = c;
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }

    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    // Coefficient of x^i; zero beyond the stored range.
    const Rational& coeff(std::size_t i) const {
        static const Rational zero(0);
        return i < c_.size() ? c_[i] : zero;
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    void set_coeff(std::size_t i, const Rational& v) {
        if (i >= c_.size()) {
            if (v == 0) return;
            c_.resize(i + 1, Rational(0));
        }
        c_[i] = v;
        normalize();
    }

    void add_to_coeff(std::size_t i, const Rational& v) {
        if (v == 0) return;
        if (i >= c_.size()) c_.resize(i + 1, Rational(0));
        c_[i] += v;
        // callers that accumulate many terms call normalize() once at the end
    }

    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend UniPoly operator+(const UniPoly& p, const UniPoly& q) {
        UniPoly r;
        r.c_.resize(std::max(p.c_.size(), q.c_.size()), Rational(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) r.c_[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) r.c_[i] += q.c_[i];
        r.normalize();
        return r;
    }

    friend UniPoly operator-(const UniPoly& p, const UniPoly& q) {
        return p + (-q);
    }

    friend UniPoly operator*(const UniPoly& p, const UniPoly& q) {
        if (p.is_zero() || q.is_zero()) return UniPoly();
        UniPoly r;
        r.c_.assign(p.c_.size() + q.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i] == 0) continue;
            for (std::size_t j = 0; j < q.c_.size(); ++j)
                r.c_[i + j] += p.c_[i] * q.c_[j];
        }
        r.normalize();
        return r;
    }

    friend UniPoly operator*(const Rational& s, const UniPoly& p) {
        if (s == 0) return UniPoly();
        UniPoly r(p);
        for (auto& x : r.c_) x *= s;
        return r;
    }

    friend bool operator==(const UniPoly& p, const UniPoly& q) {
        return p.c_ == q.c_;
    }

    // Exact Horner evaluation.
    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Floating Horner evaluation over a pre-rounded coefficient image.
    double eval_double(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
        return acc;
    }

    std::vector<double> coeffs_double() const {
        std::vector<double> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].get_d();
        return v;
    }

    // Multiplication by x^s.
    UniPoly shifted(std::size_t s) const {
        if (is_zero() || s == 0) return *this;
        UniPoly r;
        r.c_.assign(c_.size() + s, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + s] = c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        UniPoly r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        r.normalize();
        return r;
    }

    UniPoly second_derivative() const { return derivative().derivative(); }

    // Drops every coefficient of degree > max_degree.
    UniPoly truncated(int max_degree) const {
        if (max_degree < 0) return UniPoly();
        if (degree() <= max_degree) return *this;
        UniPoly r;
        r.c_.assign(c_.begin(), c_.begin() + (max_degree + 1));
        r.normalize();
        return r;
    }

    Rational max_abs_coeff() const {
        Rational m(0);
        for (const auto& x : c_) {
            Rational a = rational_abs(x);
            if (a > m) m = a;
        }
        return m;
    }

    // Serialization: ordered list of rational strings, index = power;
    // the zero polynomial is the empty list.
    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(c_.size());
        for (const auto& x : c_) out.push_back(rational_to_string(x));
        return out;
    }

    static UniPoly from_strings(const std::vector<std::string>& in) {
        std::vector<Rational> v;
        v.reserve(in.size());
        for (const auto& s : in) v.push_back(rational_from_string(s));
        return UniPoly(std::move(v));
    }

  private:
    std::vector<Rational> c_;
};

inline UniPoly poly_add(const UniPoly& p, const UniPoly& q) { return p + q; }
inline UniPoly poly_mul(const UniPoly& p, const UniPoly& q) { return p * q; }
inline Rational poly_eval(const UniPoly& p, const Rational& x) { return p.eval(x); }

} // namespace vimkg
