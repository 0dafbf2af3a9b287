// Quantitative convergence diagnostics:
//   - sampled sup-norm error against the reference series;
//   - the factorial error bound E0 (M R)^n / n! and its coverage;
//   - the exact error-propagation identity e_{n+1} = int_0^r lambda e_n ds
//     for the full-kernel scheme;
//   - the gapped factorial k~! (= k for k <= 2N+2, else k(k-1)(k-(2N+2))~!),
//     the kernel constant C, the induction threshold mu, the coefficient
//     bound B C^d / (m-N)~!, and the associated ratio test.
#pragma once

#include "airy.hpp"
#include "engine.hpp"
#include "multiplier.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vimkg {

struct BoundParams {
    int N = 0;                // kernel truncation order used by the run
    double R = 0.0;           // interval half-width
    std::optional<Rational> C;  // kernel constant (partial-sum diagnostics)
    std::optional<Rational> B;  // measured coefficient bound for m <= mu
    std::optional<int> mu;      // induction threshold index
    std::optional<double> M;    // sampled sup of |lambda| on the triangle
};

struct ErrorRecord {
    int n = 0;
    double sup_error = 0.0;
    std::optional<double> theorem1_bound; // absent in partial-sum mode
    Rational max_coeff;
    int prefix_len = 0;
    int degree = -1;
};

// Max |phi(r) - reference(r)| over 2*grid+1 uniform points in [-R, R].
inline double sup_error(const UniPoly& phi, const AirySeries& reference, double R,
                        int grid, double tail_tol = 1e-30) {
    if (grid < 2) throw std::domain_error("sup_error: grid must be >= 2");
    if (R < 0) throw std::domain_error("sup_error: R must be >= 0");
    const std::vector<double> pc = phi.coeffs_double();
    double best = 0.0;
    const double step = R / grid;
    for (int i = 0; i <= 2 * grid; ++i) {
        const double r = -R + step * i;
        double pv = 0.0;
        for (std::size_t t = pc.size(); t-- > 0;) pv = pv * r + pc[t];
        const double e = std::abs(pv - airy_eval(reference, r, tail_tol));
        if (e > best) best = e;
    }
    return best;
}

// E0 (M R)^n / n!.
inline double theorem1_bound(int n, double M, double R, double E0) {
    if (n < 0 || M < 0 || R < 0 || E0 < 0)
        throw std::domain_error("theorem1_bound: arguments must be nonnegative");
    double v = E0;
    for (int i = 1; i <= n; ++i) v *= M * R / i;
    return v;
}

// Exact check of e_{n+1}(r) = int_0^r lambda(r,s) e_n(s) ds on coefficients
// of degree <= checked_degree, where e = phi - (reference partial sum of
// order K) and K is the full-lambda working order. The identity relies on
// e_n(0) = e_n'(0) = 0 and is proved only for the full-kernel scheme, so
// partial-sum states are refused.
inline bool error_identity_check(const IterateState& prev, const IterateState& next,
                                 const LambdaTruncation& trunc,
                                 const AirySeries& reference, int checked_degree) {
    if (prev.mode.kind != Mode::Kind::FullLambda ||
        next.mode.kind != Mode::Kind::FullLambda)
        throw std::invalid_argument(
            "error_identity_check: identity is asserted only in full-lambda mode");
    const int K = prev.mode.param;
    if (checked_degree < 0 || checked_degree > K)
        throw std::domain_error("error_identity_check: need 0 <= checked_degree <= K");
    if (reference.order() < K)
        throw std::domain_error("error_identity_check: reference order below K");

    const UniPoly a_ref = reference.partial_sum(K);
    const UniPoly e_prev = prev.phi - a_ref;
    const UniPoly e_next = next.phi - a_ref;

    UniPoly rhs;
    for (int q = 0; q <= e_prev.degree(); ++q) {
        const Rational& eq = e_prev.coeff(static_cast<std::size_t>(q));
        if (eq == 0) continue;
        for (int k = 0; k <= trunc.N; ++k) {
            if (static_cast<long>(k) + q + 1 > checked_degree) break;
            const UniPoly& ak = trunc.table->alpha(static_cast<std::size_t>(k));
            if (ak.is_zero()) continue;
            const WeightedIntegral wi = weighted_integral(
                static_cast<unsigned long>(k), static_cast<unsigned long>(q));
            for (int j = 0; j <= ak.degree(); ++j) {
                const Rational& akj = ak.coeff(static_cast<std::size_t>(j));
                if (akj == 0) continue;
                const long target = wi.power + j;
                if (target > checked_degree) break;
                Rational contrib = akj * eq * wi.magnitude;
                if (wi.sign < 0) contrib = -contrib;
                rhs.add_to_coeff(static_cast<std::size_t>(target), contrib);
            }
        }
    }
    rhs.normalize();

    for (int d = 0; d <= checked_degree; ++d)
        if (rhs.coeff(static_cast<std::size_t>(d)) !=
            e_next.coeff(static_cast<std::size_t>(d)))
            return false;
    return true;
}

// Gapped factorial: k~! = k for k <= 2N+2, else k (k-1) (k-(2N+2))~!.
inline Integer funny_factorial(long k, int N) {
    if (k < 1) throw std::domain_error("funny_factorial: k must be >= 1");
    if (N < 0) throw std::domain_error("funny_factorial: N must be >= 0");
    const long gap = 2L * N + 2;
    Integer acc(1);
    while (k > gap) {
        acc *= Integer(k) * Integer(k - 1);
        k -= gap;
    }
    return acc * Integer(k);
}

// C = 1 + 2 sum_{k=3}^{N} k! sum_j |alpha_kj|; C = 1 for N < 3.
inline Rational constant_C(const AlphaTable& table, int N) {
    if (N < 2) throw std::domain_error("constant_C: N must be >= 2");
    if (table.k_max() < N) throw std::domain_error("constant_C: table too small");
    Rational sum(0);
    for (int k = 3; k <= N; ++k) {
        Rational row(0);
        for (const auto& c : table.alpha(static_cast<std::size_t>(k)).coeffs())
            row += rational_abs(c);
        sum += Rational(factorial(static_cast<unsigned long>(k))) * row;
    }
    return Rational(1) + 2 * sum;
}

// Smallest m with C / ((m-N)(m-N-1)) < 1/2, i.e. 2C < (m-N)(m-N-1).
inline int mu_threshold(const Rational& C, int N) {
    for (long m = N + 2;; ++m) {
        const Rational denom(static_cast<long>(m - N) * (m - N - 1));
        if (2 * C < denom) return static_cast<int>(m);
    }
}

// B C^d / (m-N)~! with the decomposition m = (2N+2) d + rho, rho in
// {1, ..., 2N+2}; defined only past the first block (m > 2N+2).
inline Rational comp1_bound_exact(int m, const BoundParams& params) {
    const int N = params.N;
    if (m <= 2 * N + 2)
        throw std::domain_error("comp1_bound: m must exceed 2N+2");
    if (!params.B || !params.C)
        throw std::invalid_argument("comp1_bound: params must carry B and C");
    const long d = (static_cast<long>(m) - 1) / (2L * N + 2);
    Rational bound = *params.B * rational_pow(*params.C, static_cast<unsigned long>(d));
    bound /= Rational(funny_factorial(static_cast<long>(m) - N, N));
    bound.canonicalize();
    return bound;
}

inline double comp1_bound(int m, int n, const BoundParams& params) {
    (void)n; // the bound is uniform in the iteration index
    return to_double(comp1_bound_exact(m, params));
}

// Consecutive-term ratios of sum_k D^k / k~!:
//   ratio_k = D k~! / (k+1)~!, checked against D/(k+1) (1 + 1e-12).
struct RatioTestResult {
    std::vector<double> ratios;     // ratio_k for k = 1 .. terms
    std::vector<int> violations;    // k values where the bound fails
    bool pass = true;
};

inline RatioTestResult ratio_test_check(int N, double D, int terms) {
    if (D <= 0) throw std::domain_error("ratio_test_check: D must be > 0");
    if (terms < 1) throw std::domain_error("ratio_test_check: terms must be >= 1");
    RatioTestResult result;
    result.ratios.reserve(static_cast<std::size_t>(terms));
    for (int k = 1; k <= terms; ++k) {
        Rational frac(funny_factorial(k, N), funny_factorial(k + 1, N));
        frac.canonicalize();
        const double ratio = D * to_double(frac);
        result.ratios.push_back(ratio);
        const double bound = D / (k + 1) * (1.0 + 1e-12);
        if (ratio > bound) {
            result.violations.push_back(k);
            result.pass = false;
        }
    }
    return result;
}

// Exact max of |a_m^n| over every state in the run and every index m <= mu.
inline Rational measure_B(const std::vector<IterateState>& states, int mu) {
    if (states.empty()) throw std::domain_error("measure_B: empty run");
    Rational best(0);
    for (const auto& st : states) {
        const int top = std::min(st.phi.degree(), mu);
        for (int m = 0; m <= top; ++m) {
            Rational v = rational_abs(st.phi.coeff(static_cast<std::size_t>(m)));
            if (v > best) best = v;
        }
    }
    return best;
}

} // namespace vimkg
