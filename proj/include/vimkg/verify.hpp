// The self-contained invariant suite behind `vimkg verify`: every structural
// identity and bound the library claims, executed over a fixed parameter
// matrix (N in {3,4,5,6}, steps <= 10, R in {1/2, 1, 2}) with a seeded RNG
// for the randomized checks. Failures are the output, not exceptions.
//
// Known-red diagnostic: the gapped-factorial ratio test asserts the bound
// D/(k+1) on consecutive-term ratios of sum D^k/k~!. That bound is violated
// at small k for every N >= 1 (at k = 2 the ratio is 2D/3 > D/3); the true
// ratio decays like D k^{-1/(N+1)}, which still witnesses convergence but
// not the asserted per-k inequality. The suite reports those violations
// honestly rather than weakening the check.
#pragma once

#include "airy.hpp"
#include "beta.hpp"
#include "bounds.hpp"
#include "engine.hpp"
#include "multiplier.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace vimkg {

// Sparse random polynomial with exact small-rational coefficients.
inline UniPoly random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg_dist(0, max_degree);
    std::uniform_int_distribution<int> num_dist(-9, 9);
    std::uniform_int_distribution<int> den_dist(1, 9);
    std::uniform_int_distribution<int> terms_dist(1, 8);
    UniPoly p;
    const int terms = terms_dist(rng);
    for (int t = 0; t < terms; ++t) {
        const int d = deg_dist(rng);
        int num = num_dist(rng);
        if (num == 0) num = 1;
        p.add_to_coeff(static_cast<std::size_t>(d), make_rational(num, den_dist(rng)));
    }
    p.normalize();
    return p;
}

struct InvariantResult {
    std::string name;
    long pass = 0;
    long fail = 0;
    std::vector<std::string> notes;

    InvariantResult() = default;
    explicit InvariantResult(std::string n) : name(std::move(n)) {}
};

struct VerifySummary {
    std::vector<InvariantResult> invariants;
    bool ok() const {
        for (const auto& inv : invariants)
            if (inv.fail > 0) return false;
        return true;
    }
};

namespace detail {

inline void check(InvariantResult& inv, bool cond, const std::string& note_on_fail) {
    if (cond) {
        ++inv.pass;
    } else {
        ++inv.fail;
        if (inv.notes.size() < 8) inv.notes.push_back(note_on_fail);
    }
}

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace detail

inline VerifySummary cmd_verify(std::uint64_t seed = 0x5eed1234abcdULL) {
    using detail::check;
    VerifySummary summary;
    auto& invs = summary.invariants;

    // --- Beta identities -------------------------------------------------
    {
        InvariantResult inv{"beta-symmetry"};
        for (unsigned long m = 1; m <= 30; ++m)
            for (unsigned long n = 1; n <= 30; ++n)
                check(inv, beta(m, n) == beta(n, m),
                      "B(" + std::to_string(m) + "," + std::to_string(n) + ") asymmetric");
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"beta-recursion"};
        for (unsigned long m = 1; m <= 30; ++m)
            for (unsigned long n = 1; n <= 30; ++n)
                check(inv,
                      beta(m, n + 1) ==
                          beta(n, m) * Rational(static_cast<long>(n)) /
                              Rational(static_cast<long>(m + n)),
                      "recursion fails at (" + std::to_string(m) + "," + std::to_string(n) + ")");
        invs.push_back(std::move(inv));
    }
    {
        // Brute-force oracle: expand (s-r)^m binomially, integrate with the
        // power rule, and compare with the closed form.
        InvariantResult inv{"beta-weighted-oracle"};
        for (unsigned long m = 0; m <= 10; ++m)
            for (unsigned long n = 0; n <= 10; ++n) {
                Rational acc(0); // coefficient of r^{m+n+1}
                Integer binom;
                for (unsigned long i = 0; i <= m; ++i) {
                    mpz_bin_uiui(binom.get_mpz_t(), m, i);
                    // term: C(m,i) s^i (-r)^{m-i}; integral adds r^{i+n+1}/(i+n+1)
                    Rational t(binom, Integer(static_cast<long>(i + n + 1)));
                    t.canonicalize();
                    if ((m - i) % 2 != 0) t = -t;
                    acc += t;
                }
                const WeightedIntegral wi = weighted_integral(m, n);
                Rational closed = wi.magnitude;
                if (wi.sign < 0) closed = -closed;
                check(inv,
                      acc == closed && wi.power == static_cast<long>(m + n + 1),
                      "weighted_integral mismatch at (" + std::to_string(m) + "," +
                          std::to_string(n) + ")");
            }
        invs.push_back(std::move(inv));
    }

    // --- Reference series -------------------------------------------------
    const AirySeries airy200 = airy_coeffs(200);
    {
        InvariantResult inv{"airy-values"};
        check(inv, airy200.coeff(0) == 1, "a_0 != 1");
        check(inv, airy200.coeff(1) == 0, "a_1 != 0");
        check(inv, airy200.coeff(2) == make_rational(-1, 2), "a_2 != -1/2");
        // Independent recomputation over raw arrays.
        std::vector<Rational> b(61, Rational(0));
        b[0] = 1;
        b[2] = make_rational(-1, 2);
        for (int k = 3; k <= 60; ++k) {
            Rational num = b[static_cast<std::size_t>(k - 3)] + b[static_cast<std::size_t>(k - 2)];
            b[static_cast<std::size_t>(k)] =
                -num / Rational(static_cast<long>(k) * (k - 1));
        }
        for (int k = 0; k <= 60; ++k)
            check(inv, airy200.coeff(static_cast<std::size_t>(k)) == b[static_cast<std::size_t>(k)],
                  "independent recomputation differs at k=" + std::to_string(k));
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"airy-residual"};
        for (int K = 3; K <= 200; ++K)
            check(inv, residual_check(airy_coeffs(K)) == 0,
                  "nonzero residual at K=" + std::to_string(K));
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"airy-bounded"};
        Rational mx(0);
        for (int k = 0; k <= 200; ++k) {
            Rational a = rational_abs(airy200.coeff(static_cast<std::size_t>(k)));
            if (a > mx) mx = a;
            check(inv, a <= 1, "|a_k| > 1 at k=" + std::to_string(k));
        }
        inv.notes.push_back("max |a_k| for k <= 200: " + rational_to_string(mx));
        invs.push_back(std::move(inv));
    }

    // --- Kernel table -----------------------------------------------------
    {
        InvariantResult inv{"alpha-values"};
        const AlphaTable t5 = build_alpha_table(5);
        check(inv, t5.alpha(0).is_zero(), "alpha_0 != 0");
        check(inv, t5.alpha(1) == UniPoly::constant(Rational(1)), "alpha_1 != 1");
        check(inv, t5.alpha(2).is_zero(), "alpha_2 != 0");
        check(inv, t5.alpha(3) == UniPoly::monomial(make_rational(-1, 6), 1),
              "alpha_3 != -r/6");
        check(inv, t5.alpha(4) == UniPoly::constant(make_rational(-1, 12)),
              "alpha_4 != -1/12");
        check(inv, t5.alpha(5) == UniPoly::monomial(make_rational(1, 120), 2),
              "alpha_5 != r^2/120");
        invs.push_back(std::move(inv));
    }
    const auto table60 = std::make_shared<AlphaTable>(build_alpha_table(60));
    {
        InvariantResult inv{"alpha-degree"};
        for (int k = 0; k <= 60; ++k)
            check(inv, table60->alpha(static_cast<std::size_t>(k)).degree() <= k,
                  "degree(alpha_k) > k at k=" + std::to_string(k));
        invs.push_back(std::move(inv));
    }
    {
        // Independent second implementation over raw coefficient arrays:
        // alpha2[k][j] = -(alpha2[k-3][j] + alpha2[k-2][j-1]) / (k(k-1)).
        InvariantResult inv{"alpha-dup"};
        std::vector<std::vector<Rational>> a2(61);
        a2[1] = {Rational(1)};
        for (int k = 3; k <= 60; ++k) {
            std::vector<Rational> row(static_cast<std::size_t>(k) + 1, Rational(0));
            const Rational den(static_cast<long>(k) * (k - 1));
            for (int j = 0; j <= k; ++j) {
                Rational s(0);
                const auto& p3 = a2[static_cast<std::size_t>(k - 3)];
                const auto& p2 = a2[static_cast<std::size_t>(k - 2)];
                if (static_cast<std::size_t>(j) < p3.size()) s += p3[static_cast<std::size_t>(j)];
                if (j >= 1 && static_cast<std::size_t>(j - 1) < p2.size())
                    s += p2[static_cast<std::size_t>(j - 1)];
                row[static_cast<std::size_t>(j)] = -s / den;
            }
            a2[static_cast<std::size_t>(k)] = std::move(row);
        }
        for (int k = 0; k <= 60; ++k) {
            const UniPoly dup(a2[static_cast<std::size_t>(k)]);
            check(inv, table60->alpha(static_cast<std::size_t>(k)) == dup,
                  "tables differ at k=" + std::to_string(k));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"lambda-ode-residual"};
        for (int N = 2; N <= 40; ++N) {
            const LambdaTruncation trunc(N, table60);
            const std::vector<UniPoly> res = lambda_ode_residual(trunc);
            for (int j = 0; j <= N - 2; ++j)
                check(inv, res[static_cast<std::size_t>(j)].is_zero(),
                      "order " + std::to_string(j) + " residual nonzero at N=" + std::to_string(N));
            const UniPoly expected =
                table60->alpha(static_cast<std::size_t>(N - 1)).shifted(1) +
                table60->alpha(static_cast<std::size_t>(N - 2));
            check(inv, res[static_cast<std::size_t>(N - 1)] == expected,
                  "order N-1 residual mismatch at N=" + std::to_string(N));
            const LambdaBoundary bd = lambda_boundary(trunc);
            check(inv, bd.value.is_zero() && bd.s_deriv == UniPoly::constant(Rational(1)),
                  "boundary data wrong at N=" + std::to_string(N));
        }
        invs.push_back(std::move(inv));
    }

    // --- Engine: cross-validation, structure trackers ---------------------
    std::vector<std::vector<IterateState>> runs_by_N;
    {
        InvariantResult inv{"scatter-direct-runs"};
        for (int N : {3, 4, 5, 6}) {
            const Mode mode = Mode::partial_sum(N);
            const LambdaTruncation trunc(N, table60);
            std::vector<IterateState> states;
            states.push_back(initial_state(mode));
            for (int n = 0; n < 10; ++n) {
                IterateState s1 = step_scatter(states.back(), trunc);
                IterateState s2 = step_direct(states.back(), trunc);
                check(inv, s1.phi == s2.phi,
                      "scatter != direct at N=" + std::to_string(N) +
                          " step=" + std::to_string(n + 1));
                states.push_back(std::move(s1));
            }
            runs_by_N.push_back(std::move(states));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"scatter-direct-random"};
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 100; ++i) {
            const UniPoly p = random_poly(rng, 20);
            for (int N : {3, 4, 5, 6}) {
                const Mode mode = Mode::partial_sum(N);
                const LambdaTruncation trunc(N, table60);
                const IterateState st{0, p, mode};
                check(inv, step_scatter(st, trunc).phi == step_direct(st, trunc).phi,
                      "scatter != direct on random poly " + std::to_string(i) +
                          " at N=" + std::to_string(N));
            }
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"step-trace"};
        for (const auto& states : runs_by_N) {
            const int N = states.front().mode.param;
            const LambdaTruncation trunc(N, table60);
            StepTrace trace;
            const IterateState next = step_scatter(states[2], trunc, &trace);
            UniPoly rebuilt;
            for (const auto& e : trace.contributions)
                rebuilt.add_to_coeff(static_cast<std::size_t>(e.target),
                                     e.weight *
                                         states[2].phi.coeff(static_cast<std::size_t>(e.source)));
            rebuilt.normalize();
            check(inv, rebuilt == next.phi,
                  "trace does not rebuild the step at N=" + std::to_string(N));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"gather-formula"};
        long inapplicable = 0;
        for (const auto& states : runs_by_N) {
            const int N = states.front().mode.param;
            if (N > 4) continue;
            const LambdaTruncation trunc(N, table60);
            for (std::size_t i = 0; i + 1 < states.size() && i < 3; ++i)
                for (int m = 2; m <= states[i + 1].phi.degree(); ++m) {
                    const GatherCheck g =
                        coefficient_recursion_check(states[i], states[i + 1], trunc, m);
                    if (g == GatherCheck::Inapplicable) {
                        ++inapplicable;
                        continue;
                    }
                    check(inv, g == GatherCheck::Match,
                          "gather mismatch at N=" + std::to_string(N) + " n=" +
                              std::to_string(states[i].n) + " m=" + std::to_string(m));
                }
        }
        inv.notes.push_back("inapplicable (vanishing-denominator) cases skipped: " +
                            std::to_string(inapplicable));
        invs.push_back(std::move(inv));
    }
    const AirySeries airy_big = airy_coeffs(250);
    {
        InvariantResult inv{"degree-bound"};
        for (const auto& states : runs_by_N) {
            const int N = states.front().mode.param;
            for (const auto& st : states)
                check(inv, static_cast<long>(st.phi.degree()) <= (2L * N + 2) * st.n,
                      "degree bound fails at N=" + std::to_string(N) +
                          " n=" + std::to_string(st.n));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"airy-prefix"};
        int measured_min_slack = 1 << 30;
        for (const auto& states : runs_by_N)
            for (const auto& st : states) {
                const int L = airy_prefix_length(st, airy_big);
                measured_min_slack = std::min(measured_min_slack, L - (2 * st.n + 1));
                check(inv, L >= 2 * st.n + 1,
                      "prefix < 2n+1 at N=" + std::to_string(st.mode.param) +
                          " n=" + std::to_string(st.n));
            }
        inv.notes.push_back("measured prefix minus (2n+1), minimum over runs: " +
                            std::to_string(measured_min_slack));
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"fixed-point"};
        const Mode mode = Mode::full_lambda(40);
        const LambdaTruncation trunc = lambda_for_mode(mode);
        const IterateState st{0, airy_big.partial_sum(40), mode};
        check(inv, step_scatter(st, trunc).phi == st.phi,
              "order-40 reference partial sum is not a fixed point");
        invs.push_back(std::move(inv));
    }

    // --- Full-kernel error chain -------------------------------------------
    {
        InvariantResult inv{"theorem1-coverage"};
        const Mode mode = Mode::full_lambda(120);
        const LambdaTruncation trunc = lambda_for_mode(mode);
        const std::vector<IterateState> states = run(mode, 10, trunc);
        for (double R : {0.5, 1.0}) {
            const AirySeries ref = airy_coeffs(130);
            const double M = sup_lambda_estimate(trunc, R, 400);
            std::vector<double> sups;
            for (const auto& st : states)
                sups.push_back(sup_error(st.phi, ref, R, 500));
            const double E0 = sups.front();
            for (std::size_t n = 0; n < sups.size(); ++n)
                check(inv,
                      sups[n] <= 1.05 * theorem1_bound(static_cast<int>(n), M, R, E0),
                      "coverage fails at R=" + detail::fmt_g(R) + " n=" + std::to_string(n));
            inv.notes.push_back("R=" + detail::fmt_g(R) + ": M=" + detail::fmt_g(M) +
                                " E0=" + detail::fmt_g(E0) +
                                " final=" + detail::fmt_g(sups.back()));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"error-identity"};
        const Mode mode = Mode::full_lambda(60);
        const LambdaTruncation trunc = lambda_for_mode(mode);
        const std::vector<IterateState> states = run(mode, 6, trunc);
        const AirySeries ref = airy_coeffs(60);
        for (std::size_t n = 0; n + 1 < states.size(); ++n)
            check(inv, error_identity_check(states[n], states[n + 1], trunc, ref, 40),
                  "identity fails at n=" + std::to_string(n));
        invs.push_back(std::move(inv));
    }

    // --- Coefficient bounds -------------------------------------------------
    {
        InvariantResult inv{"comp1-coverage"};
        for (int N : {3, 4}) {
            const Mode mode = Mode::partial_sum(N);
            const LambdaTruncation trunc(N, table60);
            const std::vector<IterateState> states = run(mode, 8, trunc);
            BoundParams params;
            params.N = N;
            params.C = constant_C(*table60, N);
            params.mu = mu_threshold(*params.C, N);
            params.B = measure_B(states, *params.mu);
            for (const auto& st : states)
                for (int m = 2 * N + 3; m <= st.phi.degree(); ++m)
                    check(inv,
                          rational_abs(st.phi.coeff(static_cast<std::size_t>(m))) <=
                              comp1_bound_exact(m, params),
                          "bound fails at N=" + std::to_string(N) + " n=" +
                              std::to_string(st.n) + " m=" + std::to_string(m));
            inv.notes.push_back("N=" + std::to_string(N) + ": C=" +
                                rational_to_string(*params.C) + " mu=" +
                                std::to_string(*params.mu) + " B=" +
                                rational_to_string(*params.B));
        }
        invs.push_back(std::move(inv));
    }
    {
        InvariantResult inv{"ratio-test"};
        for (int N : {1, 3})
            for (double D : {1.0, 2.0, 5.0}) {
                const RatioTestResult rt = ratio_test_check(N, D, 100);
                for (int k = 1; k <= 100; ++k) {
                    const bool violated =
                        std::find(rt.violations.begin(), rt.violations.end(), k) !=
                        rt.violations.end();
                    check(inv, !violated,
                          "ratio bound fails at N=" + std::to_string(N) + " D=" +
                              detail::fmt_g(D) + " k=" + std::to_string(k) + " (ratio " +
                              detail::fmt_g(rt.ratios[static_cast<std::size_t>(k - 1)]) +
                              " > " + detail::fmt_g(D / (k + 1)) + ")");
                }
            }
        if (inv.fail > 0)
            inv.notes.push_back(
                "expected: the per-k bound D/(k+1) does not hold for the gapped "
                "factorial (true ratio ~ D k^{-1/(N+1)}); the series still converges");
        invs.push_back(std::move(inv));
    }

    // --- Reported-only observations ------------------------------------------
    {
        InvariantResult inv{"sup-error-report"};
        for (double R : {0.5, 1.0, 2.0}) {
            std::ostringstream line;
            line << "R=" << detail::fmt_g(R) << ":";
            for (std::size_t idx = 0; idx < runs_by_N.size(); ++idx) {
                const auto& states = runs_by_N[idx];
                const double e = sup_error(states.back().phi, airy_big, R, 400);
                line << " N=" << states.front().mode.param << " err10="
                     << detail::fmt_g(e);
                check(inv, std::isfinite(e), "non-finite sup error");
            }
            inv.notes.push_back(line.str());
        }
        invs.push_back(std::move(inv));
    }

    return summary;
}

inline void print_verify_summary(const VerifySummary& summary, std::ostream& os) {
    os << "invariant suite: N in {3,4,5,6}, steps <= 10, R in {1/2, 1, 2}\n";
    std::size_t idx = 0;
    for (const auto& inv : summary.invariants) {
        ++idx;
        os << "[" << std::setw(2) << idx << "] " << std::left << std::setw(26)
           << inv.name << std::right << std::setw(7) << inv.pass << " pass "
           << std::setw(6) << inv.fail << " fail\n";
        for (const auto& note : inv.notes) os << "      - " << note << "\n";
    }
    os << (summary.ok() ? "result: PASS\n" : "result: FAIL\n");
}

} // namespace vimkg
