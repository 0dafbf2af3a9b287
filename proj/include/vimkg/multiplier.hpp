// The integration-kernel coefficient table alpha_k(r) and its partial sums
//   lambda_N(r, s) = sum_{k=0}^{N} alpha_k(r) (s - r)^k,
// where
//   alpha_0 = 0, alpha_1 = 1, alpha_2 = 0,
//   alpha_k = -(alpha_{k-3} + r * alpha_{k-2}) / (k (k-1))   for k >= 3.
// lambda is the kernel of d^2/ds^2 + s with lambda(r,r) = 0 and
// lambda_s(r,r) = 1; the residual of that characterization, expanded in
// powers of (s - r), is checkable order by order.
#pragma once

#include "polynomial.hpp"
#include "rational.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace vimkg {

class AlphaTable {
  public:
    explicit AlphaTable(std::vector<UniPoly> alphas) : alphas_(std::move(alphas)) {}

    int k_max() const { return static_cast<int>(alphas_.size()) - 1; }

    const UniPoly& alpha(std::size_t k) const {
        static const UniPoly zero;
        return k < alphas_.size() ? alphas_[k] : zero;
    }

    const std::vector<UniPoly>& alphas() const { return alphas_; }

  private:
    std::vector<UniPoly> alphas_;
};

inline AlphaTable build_alpha_table(int k_lambda) {
    if (k_lambda < 2)
        throw std::domain_error("build_alpha_table: K_lambda must be >= 2");
    std::vector<UniPoly> a(static_cast<std::size_t>(k_lambda) + 1);
    a[1] = UniPoly::constant(Rational(1));
    for (int k = 3; k <= k_lambda; ++k) {
        const Rational scale(-1, static_cast<long>(k) * (k - 1));
        UniPoly t = a[k - 3] + a[k - 2].shifted(1);
        a[k] = scale * t;
    }
    return AlphaTable(std::move(a));
}

// Coefficient of r^j in alpha_k; zero beyond the stored degree.
inline Rational alpha_kj(const AlphaTable& table, int k, int j) {
    if (k < 0 || k > table.k_max())
        throw std::out_of_range("alpha_kj: k out of range");
    if (j < 0) return Rational(0);
    return table.alpha(static_cast<std::size_t>(k)).coeff(static_cast<std::size_t>(j));
}

// A truncation order N over a shared coefficient table with k_max >= N.
struct LambdaTruncation {
    int N = 0;
    std::shared_ptr<const AlphaTable> table;

    LambdaTruncation(int n, std::shared_ptr<const AlphaTable> t)
        : N(n), table(std::move(t)) {
        if (!table) throw std::invalid_argument("LambdaTruncation: null table");
        if (N < 0 || N > table->k_max())
            throw std::domain_error("LambdaTruncation: need 0 <= N <= table k_max");
    }
};

inline LambdaTruncation make_lambda_truncation(int N) {
    return LambdaTruncation(N, std::make_shared<AlphaTable>(build_alpha_table(std::max(N, 2))));
}

// Coefficient polynomials (in r) of lambda_{N,ss} + s*lambda_N expanded in
// powers of w = s - r after substituting s = r + w:
//   residual_j = (j+2)(j+1) alpha_{j+2} + r alpha_j + alpha_{j-1},
// with alpha indices outside 0..N read as zero. Orders 0 .. N-2 vanish for
// a correctly built table; order N-1 equals r alpha_{N-1} + alpha_{N-2}.
// Returned orders run 0 .. N+1 (the full support).
inline std::vector<UniPoly> lambda_ode_residual(const LambdaTruncation& trunc) {
    if (trunc.N < 2)
        throw std::domain_error("lambda_ode_residual: N must be >= 2");
    const AlphaTable& tab = *trunc.table;
    const int N = trunc.N;
    auto alpha_or_zero = [&](int k) -> const UniPoly& {
        static const UniPoly zero;
        if (k < 0 || k > N) return zero;
        return tab.alpha(static_cast<std::size_t>(k));
    };
    std::vector<UniPoly> res;
    res.reserve(static_cast<std::size_t>(N) + 2);
    for (int j = 0; j <= N + 1; ++j) {
        UniPoly term = Rational(static_cast<long>(j + 2) * (j + 1)) * alpha_or_zero(j + 2);
        term = term + alpha_or_zero(j).shifted(1);
        term = term + alpha_or_zero(j - 1);
        res.push_back(term);
    }
    return res;
}

// Boundary data on the diagonal s = r: lambda_N(r,r) = alpha_0 and
// d/ds lambda_N(r,r) = alpha_1, as polynomials in r.
struct LambdaBoundary {
    UniPoly value;   // must be the zero polynomial
    UniPoly s_deriv; // must be the constant 1
};

inline LambdaBoundary lambda_boundary(const LambdaTruncation& trunc) {
    return LambdaBoundary{trunc.table->alpha(0), trunc.table->alpha(1)};
}

// Floating evaluation of lambda_N(r, s) via Horner in w = s - r over
// precomputed per-alpha_k values at r.
inline double lambda_eval_double(const LambdaTruncation& trunc, double r, double s) {
    const double w = s - r;
    double acc = 0.0;
    for (int k = trunc.N; k >= 0; --k)
        acc = acc * w + trunc.table->alpha(static_cast<std::size_t>(k)).eval_double(r);
    return acc;
}

// Sampled sup bound M >= max |lambda_N| over the triangle 0 <= s <= r <= R:
// lattice r_i = R i/grid, s_{ij} = r_i j/grid, inflated by a 5% safety
// factor. R = 0 degenerates to the single point (0,0) where lambda_N = 0.
inline double sup_lambda_estimate(const LambdaTruncation& trunc, double R, int grid) {
    if (R < 0) throw std::domain_error("sup_lambda_estimate: R must be >= 0");
    if (grid < 2) throw std::domain_error("sup_lambda_estimate: grid must be >= 2");
    constexpr double safety = 0.05;

    // Round each alpha_k to doubles once; evaluation is then pure Horner.
    std::vector<std::vector<double>> ad;
    ad.reserve(static_cast<std::size_t>(trunc.N) + 1);
    for (int k = 0; k <= trunc.N; ++k)
        ad.push_back(trunc.table->alpha(static_cast<std::size_t>(k)).coeffs_double());

    std::vector<double> ak_at_r(static_cast<std::size_t>(trunc.N) + 1);
    double best = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double r = R * static_cast<double>(i) / grid;
        for (int k = 0; k <= trunc.N; ++k) {
            double acc = 0.0;
            const auto& c = ad[static_cast<std::size_t>(k)];
            for (std::size_t t = c.size(); t-- > 0;) acc = acc * r + c[t];
            ak_at_r[static_cast<std::size_t>(k)] = acc;
        }
        for (int j = 0; j <= grid; ++j) {
            const double s = r * static_cast<double>(j) / grid;
            const double w = s - r;
            double acc = 0.0;
            for (int k = trunc.N; k >= 0; --k)
                acc = acc * w + ak_at_r[static_cast<std::size_t>(k)];
            const double v = std::abs(acc);
            if (v > best) best = v;
        }
    }
    return (1.0 + safety) * best;
}

} // namespace vimkg
