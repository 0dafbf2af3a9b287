// Exact Beta-function values for positive integer arguments,
//   B(m, n) = (m-1)! (n-1)! / (m+n-1)!,
// the memoized table shared by the integration step, and the weighted
// integral identity
//   int_0^r (s-r)^m s^n ds = (-1)^m B(m+1, n+1) r^(m+n+1).
#pragma once

#include "rational.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace vimkg {

// Direct exact evaluation; arguments must be >= 1. Signed parameters so a
// negative argument is caught here instead of wrapping to a huge unsigned
// factorial request.
inline Rational beta(long m, long n) {
    if (m < 1 || n < 1) throw std::domain_error("beta: arguments must be >= 1");
    const auto um = static_cast<unsigned long>(m);
    const auto un = static_cast<unsigned long>(n);
    Rational r(factorial(um - 1) * factorial(un - 1), factorial(um + un - 1));
    r.canonicalize();
    return r;
}

// Memoized Beta values. The VIM step queries a small set of (m, n) pairs
// repeatedly; the table is guarded so concurrent runs may share it.
class BetaTable {
  public:
    Rational get(unsigned long m, unsigned long n) {
        const auto key = std::make_pair(m, n);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Rational v = beta(m, n);
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(key, std::move(v)).first->second;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.size();
    }

  private:
    mutable std::mutex mu_;
    std::map<std::pair<unsigned long, unsigned long>, Rational> memo_;
};

inline BetaTable& global_beta_table() {
    static BetaTable table;
    return table;
}

// The exact value of int_0^r (s-r)^m s^n ds as sign * magnitude * r^power.
struct WeightedIntegral {
    int sign;           // (-1)^m
    Rational magnitude; // B(m+1, n+1)
    long power;         // m + n + 1
};

inline WeightedIntegral weighted_integral(long m, long n) {
    if (m < 0 || n < 0)
        throw std::domain_error("weighted_integral: powers must be >= 0");
    const auto um = static_cast<unsigned long>(m);
    const auto un = static_cast<unsigned long>(n);
    return WeightedIntegral{
        (m % 2 == 0) ? +1 : -1,
        global_beta_table().get(um + 1, un + 1),
        m + n + 1,
    };
}

} // namespace vimkg
