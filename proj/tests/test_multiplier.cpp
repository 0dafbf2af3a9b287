#include <catch2/catch_amalgamated.hpp>

#include <vimkg/multiplier.hpp>

#include <cmath>

using namespace vimkg;

TEST_CASE("alpha table opening entries", "[multiplier]") {
    const AlphaTable table = build_alpha_table(5);
    REQUIRE(table.k_max() == 5);
    REQUIRE(table.alpha(0).degree() == -1);                        // 0
    REQUIRE(table.alpha(1) == UniPoly::constant(Rational(1)));     // 1
    REQUIRE(table.alpha(2).degree() == -1);                        // 0
    REQUIRE(table.alpha(3) == UniPoly::monomial(make_rational(-1, 6), 1));
    REQUIRE(table.alpha(4) == UniPoly::constant(make_rational(-1, 12)));
    REQUIRE(table.alpha(5) == UniPoly::monomial(make_rational(1, 120), 2));
}

TEST_CASE("alpha_kj spot values", "[multiplier]") {
    const AlphaTable table = build_alpha_table(5);
    REQUIRE(alpha_kj(table, 3, 1) == make_rational(-1, 6));
    REQUIRE(alpha_kj(table, 3, 0) == Rational(0));
    REQUIRE(alpha_kj(table, 5, 2) == make_rational(1, 120));
    REQUIRE(alpha_kj(table, 4, 0) == make_rational(-1, 12));
    REQUIRE(alpha_kj(table, 1, 0) == Rational(1));
    REQUIRE(alpha_kj(table, 2, 0) == Rational(0));
    REQUIRE(alpha_kj(table, 5, 7) == Rational(0));  // beyond stored degree
    REQUIRE(alpha_kj(table, 5, -1) == Rational(0)); // negative power
    REQUIRE_THROWS_AS(alpha_kj(table, 6, 0), std::out_of_range);
}

TEST_CASE("alpha recursion duplicated independently", "[multiplier]") {
    const int K = 40;
    const AlphaTable table = build_alpha_table(K);
    // independent recomputation straight from the recursion
    std::vector<UniPoly> a(K + 1);
    a[1] = UniPoly::constant(Rational(1));
    const UniPoly r_poly = UniPoly::monomial(Rational(1), 1);
    for (int k = 3; k <= K; ++k) {
        const UniPoly numer = a[k - 3] + r_poly * a[k - 2];
        a[k] = make_rational(-1, static_cast<long>(k) * (k - 1)) * numer;
    }
    for (int k = 0; k <= K; ++k) REQUIRE(table.alpha(k) == a[k]);
}

TEST_CASE("alpha degree stays at most k", "[multiplier]") {
    const AlphaTable table = build_alpha_table(60);
    for (int k = 0; k <= 60; ++k) REQUIRE(table.alpha(k).degree() <= k);
}

TEST_CASE("table construction validates its order", "[multiplier]") {
    REQUIRE_THROWS_AS(build_alpha_table(1), std::domain_error);
    REQUIRE_NOTHROW(build_alpha_table(2));
}

TEST_CASE("kernel ODE residual vanishes through order N-2", "[multiplier]") {
    for (int N : {2, 3, 4, 5, 10, 25}) {
        const LambdaTruncation trunc = make_lambda_truncation(N);
        const std::vector<UniPoly> res = lambda_ode_residual(trunc);
        REQUIRE(static_cast<int>(res.size()) == N + 2);
        for (int j = 0; j <= N - 2; ++j) REQUIRE(res[j].degree() == -1);
        // first surviving order: r*alpha_{N-1} + alpha_{N-2}
        const UniPoly expect = UniPoly::monomial(Rational(1), 1) * trunc.table->alpha(N - 1)
                             + trunc.table->alpha(N - 2);
        REQUIRE(res[N - 1] == expect);
    }
}

TEST_CASE("kernel ODE residual at N=3 leaves a constant", "[multiplier]") {
    const LambdaTruncation trunc = make_lambda_truncation(3);
    const std::vector<UniPoly> res = lambda_ode_residual(trunc);
    // orders 0 and 1 vanish; order 2 is r*alpha_2 + alpha_1 = 1
    REQUIRE(res[0].degree() == -1);
    REQUIRE(res[1].degree() == -1);
    REQUIRE(res[2] == UniPoly::constant(Rational(1)));
}

TEST_CASE("diagonal boundary data", "[multiplier]") {
    for (int N : {2, 3, 7}) {
        const LambdaBoundary b = lambda_boundary(make_lambda_truncation(N));
        REQUIRE(b.value.degree() == -1);
        REQUIRE(b.s_deriv == UniPoly::constant(Rational(1)));
    }
}

TEST_CASE("truncation construction validates N against the table", "[multiplier]") {
    const auto trunc = make_lambda_truncation(4);
    REQUIRE(trunc.N == 4);
    REQUIRE(trunc.table->k_max() >= 4);
    REQUIRE_THROWS_AS(LambdaTruncation(7, trunc.table), std::domain_error);
    REQUIRE_NOTHROW(LambdaTruncation(2, trunc.table));
}

TEST_CASE("pointwise kernel evaluation matches the series", "[multiplier]") {
    // lambda_3(r,s) = (s-r) - r(s-r)^3/6 evaluated by hand at (r,s)=(1, 1/2):
    // w = -1/2, value = -1/2 - 1*(-1/8)/6 = -1/2 + 1/48 = -23/48.
    const LambdaTruncation trunc = make_lambda_truncation(3);
    REQUIRE(lambda_eval_double(trunc, 1.0, 0.5) == Catch::Approx(-23.0 / 48.0).epsilon(1e-15));
    REQUIRE(lambda_eval_double(trunc, 1.0, 1.0) == 0.0);
}

TEST_CASE("sup estimate for the linear kernel", "[multiplier]") {
    // N=1 truncation is lambda_1 = (s-r); on the triangle 0<=s<=r<=1 its
    // magnitude peaks at exactly 1, so the 5%-inflated estimate is 1.05.
    const LambdaTruncation trunc = make_lambda_truncation(1);
    REQUIRE(sup_lambda_estimate(trunc, 1.0, 100) == Catch::Approx(1.05).epsilon(1e-12));
}

TEST_CASE("sup estimate degenerate interval", "[multiplier]") {
    const LambdaTruncation trunc = make_lambda_truncation(3);
    REQUIRE(sup_lambda_estimate(trunc, 0.0, 10) == 0.0);
}

TEST_CASE("sup estimate is grid-stable at high order", "[multiplier]") {
    const LambdaTruncation trunc = make_lambda_truncation(40);
    const double coarse = sup_lambda_estimate(trunc, 1.0, 201);
    const double fine = sup_lambda_estimate(trunc, 1.0, 401);
    REQUIRE(std::abs(coarse - fine) / fine < 0.01);
}

TEST_CASE("sup estimate validates arguments", "[multiplier]") {
    const LambdaTruncation trunc = make_lambda_truncation(3);
    REQUIRE_THROWS_AS(sup_lambda_estimate(trunc, -1.0, 10), std::domain_error);
    REQUIRE_THROWS_AS(sup_lambda_estimate(trunc, 1.0, 1), std::domain_error);
}
