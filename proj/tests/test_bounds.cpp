#include <catch2/catch_amalgamated.hpp>

#include <vimkg/bounds.hpp>

#include <algorithm>
#include <cmath>

using namespace vimkg;

TEST_CASE("gapped factorial values", "[bounds]") {
    // N=1 means a gap of 4: k~! = k for k <= 4.
    REQUIRE(funny_factorial(1, 1) == Integer(1));
    REQUIRE(funny_factorial(3, 1) == Integer(3));
    REQUIRE(funny_factorial(4, 1) == Integer(4));
    REQUIRE(funny_factorial(5, 1) == Integer(20));   // 5*4*1~!
    REQUIRE(funny_factorial(9, 1) == Integer(1440)); // 9*8*5~! = 72*20
    // N=3 means a gap of 8.
    REQUIRE(funny_factorial(6, 3) == Integer(6));
    REQUIRE(funny_factorial(14, 3) == Integer(14 * 13 * 6));
    REQUIRE_THROWS_AS(funny_factorial(0, 1), std::domain_error);
    REQUIRE_THROWS_AS(funny_factorial(5, -1), std::domain_error);
}

TEST_CASE("gapped factorial recursion property", "[bounds]") {
    for (int N : {1, 2, 3, 5})
        for (long k = 2 * N + 3; k <= 60; ++k)
            REQUIRE(funny_factorial(k, N) ==
                    Integer(k) * Integer(k - 1) * funny_factorial(k - (2 * N + 2), N));
}

TEST_CASE("kernel constant values", "[bounds]") {
    const AlphaTable table = build_alpha_table(6);
    REQUIRE(constant_C(table, 2) == Rational(1)); // empty sum
    REQUIRE(constant_C(table, 3) == Rational(3)); // 1 + 2*3!*(1/6)
    REQUIRE(constant_C(table, 4) == Rational(7)); // 3 + 2*4!*(1/12)
    REQUIRE_THROWS_AS(constant_C(table, 1), std::domain_error);
    REQUIRE_THROWS_AS(constant_C(table, 9), std::domain_error);
}

TEST_CASE("induction threshold", "[bounds]") {
    // smallest m with 2C < (m-N)(m-N-1)
    REQUIRE(mu_threshold(Rational(3), 3) == 7);  // 2*3=6 < 4*3=12 at m=7
    REQUIRE(mu_threshold(Rational(7), 4) == 9);  // 14 < 5*4=20 at m=9
    REQUIRE(mu_threshold(Rational(1), 2) == 5);  // 2 < 3*2=6 at m=5
}

TEST_CASE("coefficient bound spot values", "[bounds]") {
    BoundParams p;
    p.N = 3;
    p.B = Rational(1);
    p.C = Rational(3);
    // m = 9 = 8*1 + 1: bound = 3 / funny(6,3) = 3/6 = 1/2
    REQUIRE(comp1_bound_exact(9, p) == make_rational(1, 2));
    // m = 17 = 8*2 + 1: bound = 9 / funny(14,3) = 9/1092
    REQUIRE(comp1_bound_exact(17, p) == make_rational(9, 1092));
    REQUIRE(comp1_bound(9, 5, p) == 0.5);
    // precondition: first block is excluded
    REQUIRE_THROWS_AS(comp1_bound_exact(8, p), std::domain_error);
    REQUIRE_THROWS_AS(comp1_bound_exact(3, p), std::domain_error);
    BoundParams empty;
    empty.N = 3;
    REQUIRE_THROWS_AS(comp1_bound_exact(9, empty), std::invalid_argument);
}

TEST_CASE("theorem bound values", "[bounds]") {
    REQUIRE(theorem1_bound(0, 2.0, 1.0, 0.7) == 0.7);
    REQUIRE(theorem1_bound(5, 1.0, 1.0, 1.0) == Catch::Approx(1.0 / 120.0).epsilon(1e-15));
    // 1.05^10 / 10!
    const double expect = std::pow(1.05, 10) / 3628800.0;
    REQUIRE(theorem1_bound(10, 1.05, 1.0, 1.0) == Catch::Approx(expect).epsilon(1e-12));
    REQUIRE(theorem1_bound(10, 1.05, 1.0, 1.0) == Catch::Approx(4.4888e-7).epsilon(1e-4));
    REQUIRE_THROWS_AS(theorem1_bound(-1, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("theorem bound eventually decreases", "[bounds]") {
    double prev = theorem1_bound(2, 1.05, 1.0, 1.0);
    for (int n = 3; n <= 30; ++n) {
        const double cur = theorem1_bound(n, 1.05, 1.0, 1.0);
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("sup error basics", "[bounds]") {
    const AirySeries ref = airy_coeffs(80);
    // the reference partial sum of high order is close to the reference
    const UniPoly good = ref.partial_sum(80);
    REQUIRE(sup_error(good, ref, 1.0, 100) < 1e-15);
    // the constant 1 misses badly at r = +-1
    const UniPoly one = UniPoly::constant(Rational(1));
    const double e0 = sup_error(one, ref, 1.0, 100);
    REQUIRE(e0 == Catch::Approx(0.58995496124330327).epsilon(1e-12));
    REQUIRE_THROWS_AS(sup_error(one, ref, 1.0, 1), std::domain_error);
    REQUIRE_THROWS_AS(sup_error(one, ref, -1.0, 10), std::domain_error);
}

TEST_CASE("sup error at R=0 is the center offset", "[bounds]") {
    const AirySeries ref = airy_coeffs(40);
    UniPoly p = UniPoly::constant(make_rational(3, 2));
    REQUIRE(sup_error(p, ref, 0.0, 10) == Catch::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("error identity holds step by step", "[bounds]") {
    const int K = 60;
    const Mode mode = Mode::full_lambda(K);
    const LambdaTruncation trunc = lambda_for_mode(mode);
    const AirySeries ref = airy_coeffs(K);
    const auto states = run(mode, 6, trunc);
    for (int n = 0; n < 6; ++n)
        REQUIRE(error_identity_check(states[n], states[n + 1], trunc, ref, 40));
}

TEST_CASE("error identity on the zero-error state", "[bounds]") {
    const int K = 40;
    const Mode mode = Mode::full_lambda(K);
    const LambdaTruncation trunc = lambda_for_mode(mode);
    const AirySeries ref = airy_coeffs(K);
    const IterateState fixed{0, ref.partial_sum(K), mode};
    const IterateState stepped = step_scatter(fixed, trunc);
    REQUIRE(error_identity_check(fixed, stepped, trunc, ref, 30));
}

TEST_CASE("error identity refuses the partial-sum scheme", "[bounds]") {
    const Mode mode = Mode::partial_sum(3);
    const LambdaTruncation trunc = lambda_for_mode(mode);
    const AirySeries ref = airy_coeffs(30);
    const auto states = run(mode, 1, trunc);
    REQUIRE_THROWS_AS(error_identity_check(states[0], states[1], trunc, ref, 5),
                      std::invalid_argument);
}

TEST_CASE("error identity validates degrees", "[bounds]") {
    const int K = 20;
    const Mode mode = Mode::full_lambda(K);
    const LambdaTruncation trunc = lambda_for_mode(mode);
    const AirySeries ref = airy_coeffs(K);
    const auto states = run(mode, 1, trunc);
    REQUIRE_THROWS_AS(error_identity_check(states[0], states[1], trunc, ref, 21),
                      std::domain_error);
    REQUIRE_THROWS_AS(error_identity_check(states[0], states[1], trunc, airy_coeffs(10), 5),
                      std::domain_error);
}

TEST_CASE("error identity detects corruption", "[bounds]") {
    const int K = 30;
    const Mode mode = Mode::full_lambda(K);
    const LambdaTruncation trunc = lambda_for_mode(mode);
    const AirySeries ref = airy_coeffs(K);
    const auto states = run(mode, 2, trunc);
    IterateState bad = states[2];
    bad.phi.set_coeff(7, bad.phi.coeff(7) + make_rational(1, 1000));
    bad.phi.normalize();
    REQUIRE_FALSE(error_identity_check(states[1], bad, trunc, ref, 20));
}

TEST_CASE("ratio test equality case", "[bounds]") {
    // N=1, D=1, k=4: ratio = 4~!/5~! = 4/20 = 1/5 = D/(k+1); the slackened
    // bound accepts equality.
    const RatioTestResult r = ratio_test_check(1, 1.0, 4);
    REQUIRE(r.ratios.size() == 4);
    REQUIRE(r.ratios[3] == Catch::Approx(0.2).epsilon(1e-15));
    REQUIRE(std::find(r.violations.begin(), r.violations.end(), 4) == r.violations.end());
}

TEST_CASE("ratio test flags early indices", "[bounds]") {
    // k=2 gives ratio 2~!/3~! * D = 2/3 D > D/3: the claimed per-term bound
    // does not hold there, and the checker must say so.
    const RatioTestResult r = ratio_test_check(1, 1.0, 10);
    REQUIRE_FALSE(r.pass);
    REQUIRE(std::find(r.violations.begin(), r.violations.end(), 2) != r.violations.end());
    REQUIRE(r.ratios[1] == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ratio test ratios decay, slowly", "[bounds]") {
    // The consecutive-term ratio for gap 2N+2 behaves like D k^(-1/(N+1)):
    // it does go to zero, but far slower than D/(k+1). At N=1 (gap 4) the
    // decay exponent is -1/2, so by k=400 the D=1 ratio sits near 0.05.
    const RatioTestResult r = ratio_test_check(1, 1.0, 400);
    REQUIRE(r.ratios.back() < 0.1);
    double head_max = 0, tail_max = 0;
    for (std::size_t i = 0; i < 50; ++i) head_max = std::max(head_max, r.ratios[i]);
    for (std::size_t i = 350; i < 400; ++i) tail_max = std::max(tail_max, r.ratios[i]);
    REQUIRE(tail_max < head_max / 4);

    // With D=1 every ratio is below one, so the terms 1/k~! themselves are
    // crushed: dozens of orders of magnitude between k=50 and k=100.
    Rational term50(Integer(1), funny_factorial(50, 1));
    Rational term100(Integer(1), funny_factorial(100, 1));
    term50.canonicalize();
    term100.canonicalize();
    REQUIRE(term100 < term50 * make_rational(1, 1000000));
    for (double ratio : r.ratios) REQUIRE(ratio < 1.0);
}

TEST_CASE("ratio test validates arguments", "[bounds]") {
    REQUIRE_THROWS_AS(ratio_test_check(1, 0.0, 10), std::domain_error);
    REQUIRE_THROWS_AS(ratio_test_check(1, 1.0, 0), std::domain_error);
}

TEST_CASE("measured coefficient bound", "[bounds]") {
    const Mode mode = Mode::partial_sum(3);
    const auto states = run(mode, 4);
    const Rational B = measure_B(states, 7);
    REQUIRE(B >= Rational(1));  // a_0 = 1 is always present
    REQUIRE(B <= Rational(2));  // observed runs stay small near the origin
    // mu = 0 sees only a_0 = 1
    REQUIRE(measure_B(states, 0) == Rational(1));
    // single initial state
    REQUIRE(measure_B({initial_state(mode)}, 10) == Rational(1));
    REQUIRE_THROWS_AS(measure_B({}, 3), std::domain_error);
}

TEST_CASE("comp1 bound covers observed coefficients", "[bounds]") {
    for (int N : {3, 4}) {
        const Mode mode = Mode::partial_sum(N);
        const auto states = run(mode, 6);
        BoundParams p;
        p.N = N;
        p.C = constant_C(*lambda_for_mode(mode).table, N);
        p.mu = mu_threshold(*p.C, N);
        p.B = measure_B(states, *p.mu);
        for (const auto& st : states)
            for (int m = 2 * N + 3; m <= st.phi.degree(); ++m)
                REQUIRE(rational_abs(st.phi.coeff(static_cast<std::size_t>(m))) <=
                        comp1_bound_exact(m, p));
    }
}
