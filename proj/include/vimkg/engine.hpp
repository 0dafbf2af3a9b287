// The iteration engine for
//   phi_{n+1}(r) = phi_n(r) + int_0^r lambda(r,s) (phi_n''(s) + s phi_n(s) + phi_n(s)) ds,
// phi_0 = 1, in two modes:
//   PartialSum(N):  the kernel is the truncation lambda_N itself;
//   FullLambda(K):  the kernel truncation order is K+1 and every output
//                   coefficient of degree > K is dropped. Kernel terms of
//                   order k only reach degrees >= k-1, so all retained
//                   coefficients equal the untruncated-kernel values.
// Two independent step implementations must agree exactly: step_direct
// integrates the expanded integrand term by term; step_scatter applies the
// closed-form per-source-monomial contribution.
#pragma once

#include "airy.hpp"
#include "beta.hpp"
#include "multiplier.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace vimkg {

struct Mode {
    enum class Kind { PartialSum, FullLambda };
    Kind kind = Kind::PartialSum;
    int param = 3; // N for PartialSum, working order K for FullLambda

    static Mode partial_sum(int N) {
        if (N < 2) throw std::domain_error("Mode: partial-sum N must be >= 2");
        return Mode{Kind::PartialSum, N};
    }
    static Mode full_lambda(int K) {
        if (K < 2) throw std::domain_error("Mode: full-lambda K must be >= 2");
        return Mode{Kind::FullLambda, K};
    }

    // Highest retained output degree; unbounded in partial-sum mode.
    int max_degree() const {
        return kind == Kind::FullLambda ? param : std::numeric_limits<int>::max();
    }
};

struct IterateState {
    int n = 0;
    UniPoly phi;
    Mode mode;
};

inline IterateState initial_state(const Mode& mode) {
    return IterateState{0, UniPoly::constant(Rational(1)), mode};
}

// One (source index, target index, weight) record; summing
// weight * a^n_{source} over records with a given target reproduces
// a^{n+1}_{target} exactly.
struct TraceEntry {
    int source = 0;
    int target = 0;
    Rational weight;
};

struct StepTrace {
    std::vector<TraceEntry> contributions;
};

namespace detail {

inline void check_step_preconditions(const IterateState& state,
                                     const LambdaTruncation& trunc) {
    if (state.mode.kind == Mode::Kind::PartialSum) {
        if (trunc.N != state.mode.param)
            throw std::invalid_argument(
                "step: partial-sum mode requires a lambda truncation of order N");
    } else {
        if (trunc.N < state.mode.param + 1)
            throw std::invalid_argument(
                "step: full-lambda mode requires kernel order K_lambda >= K+1");
    }
}

} // namespace detail

// Oracle step: expand psi = phi'' + s phi + phi, then integrate
// lambda * psi term by term with the weighted-integral identity
// int_0^r (s-r)^k s^q ds = (-1)^k B(k+1, q+1) r^(k+q+1).
inline IterateState step_direct(const IterateState& state, const LambdaTruncation& trunc) {
    detail::check_step_preconditions(state, trunc);
    const int max_deg = state.mode.max_degree();
    const UniPoly& phi = state.phi;
    const UniPoly psi = phi.second_derivative() + phi.shifted(1) + phi;

    UniPoly out = phi.truncated(max_deg);
    for (int k = 0; k <= trunc.N; ++k) {
        const UniPoly& ak = trunc.table->alpha(static_cast<std::size_t>(k));
        if (ak.is_zero()) continue;
        for (int j = 0; j <= ak.degree(); ++j) {
            const Rational& akj = ak.coeff(static_cast<std::size_t>(j));
            if (akj == 0) continue;
            for (int q = 0; q <= psi.degree(); ++q) {
                const Rational& pq = psi.coeff(static_cast<std::size_t>(q));
                if (pq == 0) continue;
                const WeightedIntegral wi =
                    weighted_integral(static_cast<unsigned long>(k),
                                      static_cast<unsigned long>(q));
                const long target = wi.power + j;
                if (target > max_deg) continue;
                Rational contrib = akj * pq * wi.magnitude;
                if (wi.sign < 0) contrib = -contrib;
                out.add_to_coeff(static_cast<std::size_t>(target), contrib);
            }
        }
    }
    out.normalize();
    return IterateState{state.n + 1, std::move(out), state.mode};
}

// Production step: closed-form scatter of each source monomial a_m r^m.
//   m < 2: the identity copy survives; for m >= 2 it cancels against the
//          order-1 kernel term's second-derivative channel exactly.
//   order-1 kernel: -(B(2,m+1) r^{m+2} + B(2,m+2) r^{m+3});
//   order k >= 3, coefficient alpha_kj: (-1)^k alpha_kj times
//          m(m-1) B(k+1,m-1) r^{k+m+j-1}   (only m >= 2)
//        + B(k+1,m+1) r^{k+m+j+1} + B(k+1,m+2) r^{k+m+j+2}.
inline IterateState step_scatter(const IterateState& state, const LambdaTruncation& trunc,
                                 StepTrace* trace = nullptr) {
    detail::check_step_preconditions(state, trunc);
    const int max_deg = state.mode.max_degree();
    const UniPoly& phi = state.phi;
    BetaTable& bt = global_beta_table();

    UniPoly out;
    auto add = [&](int source, long target, const Rational& weight, const Rational& value) {
        if (target > max_deg) return;
        out.add_to_coeff(static_cast<std::size_t>(target), value);
        if (trace)
            trace->contributions.push_back(
                TraceEntry{source, static_cast<int>(target), weight});
    };

    for (int m = 0; m <= phi.degree(); ++m) {
        const Rational& am = phi.coeff(static_cast<std::size_t>(m));
        if (am == 0) continue;
        const unsigned long mu = static_cast<unsigned long>(m);

        if (m < 2) add(m, m, Rational(1), am);

        {
            const Rational w1 = -bt.get(2, mu + 1);
            add(m, m + 2, w1, w1 * am);
            const Rational w2 = -bt.get(2, mu + 2);
            add(m, m + 3, w2, w2 * am);
        }

        for (int k = 3; k <= trunc.N; ++k) {
            if (static_cast<long>(k) + m - 1 > max_deg) break; // smallest target already out of range
            const UniPoly& ak = trunc.table->alpha(static_cast<std::size_t>(k));
            if (ak.is_zero()) continue;
            const bool negate = (k % 2 != 0);
            for (int j = 0; j <= ak.degree(); ++j) {
                const Rational& akj = ak.coeff(static_cast<std::size_t>(j));
                if (akj == 0) continue;
                Rational base = akj;
                if (negate) base = -base;
                const long kmj = static_cast<long>(k) + m + j;
                if (m >= 2) {
                    Rational w = base * Rational(static_cast<long>(m) * (m - 1)) *
                                 bt.get(static_cast<unsigned long>(k) + 1, mu - 1);
                    add(m, kmj - 1, w, w * am);
                }
                Rational w1 = base * bt.get(static_cast<unsigned long>(k) + 1, mu + 1);
                add(m, kmj + 1, w1, w1 * am);
                Rational w2 = base * bt.get(static_cast<unsigned long>(k) + 1, mu + 2);
                add(m, kmj + 2, w2, w2 * am);
            }
        }
    }
    out.normalize();
    return IterateState{state.n + 1, std::move(out), state.mode};
}

// Per-target coefficient formula, checked against the engine:
//   a^{n+1}_m = -(a^n_{m-2} + a^n_{m-3}) / (m(m-1))
//     + sum_{k=3}^{N} (-1)^k sum_j alpha_kj
//         (a^n_{q+1} + (a^n_{q-1} + a^n_{q-2}) / ((q+1) q)) * k!(q+1)!/(q+k)!
// with q = m - k - j and negative-index coefficients zero. For q in {0,-1}
// the a_{q+1} term has no engine counterpart (the derivative channel needs
// source index >= 2), so a nonzero alpha_kj * a_{q+1} makes the formula
// inapplicable at this m; terms with q <= -2 reference no sources at all.
enum class GatherCheck { Match, Mismatch, Inapplicable };

inline GatherCheck coefficient_recursion_check(const IterateState& prev,
                                               const IterateState& next,
                                               const LambdaTruncation& trunc, int m) {
    if (m < 2) throw std::domain_error("coefficient_recursion_check: m must be >= 2");
    if (m > prev.mode.max_degree())
        throw std::domain_error("coefficient_recursion_check: m beyond retained degree");
    const UniPoly& a = prev.phi;
    auto at = [&](long i) -> Rational {
        return i < 0 ? Rational(0) : a.coeff(static_cast<std::size_t>(i));
    };

    Rational gather = -(at(m - 2) + at(m - 3)) / Rational(static_cast<long>(m) * (m - 1));
    for (int k = 3; k <= trunc.N; ++k) {
        const UniPoly& ak = trunc.table->alpha(static_cast<std::size_t>(k));
        for (int j = 0; j <= ak.degree(); ++j) {
            const Rational& akj = ak.coeff(static_cast<std::size_t>(j));
            if (akj == 0) continue;
            const long q = static_cast<long>(m) - k - j;
            if (q <= -2) continue;
            if (q <= 0) {
                if (at(q + 1) != 0) return GatherCheck::Inapplicable;
                continue;
            }
            Rational inner = at(q + 1) + (at(q - 1) + at(q - 2)) / Rational(q * (q + 1));
            Rational factor(factorial(static_cast<unsigned long>(k)) *
                                factorial(static_cast<unsigned long>(q + 1)),
                            factorial(static_cast<unsigned long>(q + k)));
            factor.canonicalize();
            Rational term = akj * inner * factor;
            if (k % 2 != 0) term = -term;
            gather += term;
        }
    }
    return gather == next.phi.coeff(static_cast<std::size_t>(m)) ? GatherCheck::Match
                                                                 : GatherCheck::Mismatch;
}

// Kernel truncation appropriate for a mode: order N in partial-sum mode,
// order K+1 in full-lambda mode.
inline LambdaTruncation lambda_for_mode(const Mode& mode) {
    const int order = mode.kind == Mode::Kind::PartialSum ? mode.param : mode.param + 1;
    return make_lambda_truncation(order);
}

// phi_0 .. phi_steps. With cross_check, every scatter step is re-derived
// via step_direct and exact equality is enforced.
inline std::vector<IterateState> run(const Mode& mode, int steps,
                                     const LambdaTruncation& trunc,
                                     bool cross_check = false) {
    if (steps < 1) throw std::domain_error("run: steps must be >= 1");
    std::vector<IterateState> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    states.push_back(initial_state(mode));
    for (int n = 0; n < steps; ++n) {
        IterateState next = step_scatter(states.back(), trunc);
        if (cross_check) {
            const IterateState check = step_direct(states.back(), trunc);
            if (!(check.phi == next.phi))
                throw std::logic_error("run: scatter/direct cross-check failed at step " +
                                       std::to_string(n + 1));
        }
        states.push_back(std::move(next));
    }
    return states;
}

inline std::vector<IterateState> run(const Mode& mode, int steps, bool cross_check = false) {
    return run(mode, steps, lambda_for_mode(mode), cross_check);
}

// Largest index L such that the iterate's coefficients 0 .. L all equal the
// reference coefficients exactly (-1 if even index 0 differs). Comparison
// continues past the iterate's degree with zero coefficients, so the
// reference must extend at least to the iterate's degree.
inline int airy_prefix_length(const IterateState& state, const AirySeries& reference) {
    if (reference.order() < state.phi.degree())
        throw std::domain_error("airy_prefix_length: reference order too small");
    for (int m = 0; m <= reference.order(); ++m) {
        if (state.phi.coeff(static_cast<std::size_t>(m)) !=
            reference.coeff(static_cast<std::size_t>(m)))
            return m - 1;
    }
    return reference.order();
}

} // namespace vimkg
