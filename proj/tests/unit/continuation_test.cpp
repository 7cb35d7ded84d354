#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/continuation.hpp>
#include <compspec/errors.hpp>

using namespace compspec;

namespace
{

constexpr mpfr_prec_t prec = 256;

BigFloat tol(long bits)
{
    return pow2(-bits, prec);
}

BigFloat diff(const BigComplex &a, const BigComplex &b)
{
    return abs(a - b);
}

} // namespace

TEST_CASE("exact extension reproduces the closed form")
{
    const AnalyticSymbol phi = parse_symbol("1/2*x");
    const GlobalSolution sol = GlobalSolution::build(phi, RealValue(Rational(0)), 5, parse_function("1+x^2"));
    REQUIRE(sol.exact());
    std::mt19937 rng(501);
    for (int t = 0; t < 20; ++t) {
        Rational x(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 9) + 1);
        x.canonicalize();
        const Evaluation e = evaluate(sol, RealValue(x), prec);
        REQUIRE(e.exact);
        CHECK(*e.exact == GaussRational(Rational(-1, 4) - Rational(4, 19) * x * x));
    }
}

TEST_CASE("points of the core use the series directly")
{
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const GlobalSolution sol = GlobalSolution::build(phi, RealValue(Rational(0)), 2, parse_function("x+exp(x)"));
    CHECK_FALSE(sol.exact());
    const Rational inside = sol.core().interior_point();
    const Evaluation e = extend_forward(sol, RealValue(inside), prec);
    CHECK(e.depth == 0);
    const BigComplex direct = sol.local().series.eval(BigFloat(inside, prec));
    CHECK(diff(e.value, direct) < tol(240));
}

TEST_CASE("property: values satisfy the equation pointwise")
{
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const Expr gamma = parse_function("x+exp(x)");
    const GaussRational lambda = 2;
    const GlobalSolution sol = GlobalSolution::build(phi, RealValue(Rational(0)), lambda, gamma);
    for (int k = -4; k <= 4; ++k) {
        const BigFloat x(Rational(5 * k, 2), prec);
        const Evaluation fx = evaluate(sol, RealValue(x), prec);
        const Evaluation fphi = evaluate(sol, RealValue(phi.eval(x)), prec);
        const BigComplex r = fphi.value - BigComplex(lambda, prec) * fx.value - BigComplex(eval(gamma, x));
        INFO("x = " << x.to_string(10));
        CHECK(abs(r) < tol(200));
        CHECK(fx.error_bound < tol(200));
    }
}

TEST_CASE("property: rules agree on overlaps for -x^2 + x")
{
    // The local series only exists in closed form here (the multiplier is 1):
    // f = x^2 solves the equation with gamma = (x - x^2)^2 - 2 x^2.
    const AnalyticSymbol phi = parse_symbol("-x^2+x");
    const GlobalSolution sol = GlobalSolution::build(phi, RealValue(Rational(0)), 2, parse_function("x^4-2*x^3-x^2"));
    REQUIRE(sol.exact());
    REQUIRE(sol.rules().size() == 3);
    for (int k = 1; k < 10; ++k) {
        const Rational x(k, 10);
        const Evaluation fwd = extend_forward(sol, RealValue(x), prec);
        // The inverse branch lives on phi((-inf, 1/2)) = (-inf, 1/4).
        if (x < Rational(1, 4)) {
            const Evaluation inv = extend_inverse_branch(sol, RealValue(x), prec);
            CHECK(diff(fwd.value, inv.value) < tol(224));
        }
        if (x > Rational(1, 2)) {
            const Evaluation mir = extend_mirror(sol, RealValue(x), prec);
            CHECK(diff(fwd.value, mir.value) < tol(224));
        }
    }
    // Outside the basin the forward rule fails; the others reach f = x^2.
    CHECK_THROWS(extend_forward(sol, RealValue(Rational(-3)), prec));
    for (const Rational x : {Rational(-3), Rational(-1, 2), Rational(3, 2), Rational(4)}) {
        const Evaluation e = evaluate(sol, RealValue(x), prec);
        INFO("x = " << to_string(x));
        CHECK(diff(e.value, BigComplex(BigFloat(x * x, prec))) < tol(200));
    }
}

TEST_CASE("orbit sums and the telescoping identity")
{
    const GlobalSolution sol =
        GlobalSolution::build(parse_symbol("1/2*x"), RealValue(Rational(0)), 5, parse_function("1+x^2"));
    const OrbitSumCheck c = orbit_sum_check(sol, RealValue(Rational(7, 3)), 6, prec);
    REQUIRE(c.exact_residual);
    CHECK(c.exact_residual->is_zero());

    const GlobalSolution q =
        GlobalSolution::build(parse_symbol("-x^2+5/2*x"), RealValue(Rational(3, 2)), Rational(1, 2), parse_function("x"));
    const OrbitSumCheck t = telescoping_check(q, 20, prec);
    CHECK(t.residual < tol(150));
}

TEST_CASE("property: preimage orbits")
{
    for (const Rational mu : {Rational(5, 2), Rational(3), Rational(5), Rational(7, 3)}) {
        const std::vector<BigFloat> x = preimage_orbit(mu, 30, prec);
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(Polynomial({Rational(0), mu, Rational(-1)}));
        CHECK(x.front() == BigFloat(1, prec));
        const BigFloat bound = BigFloat(2, prec) / BigFloat(mu, prec);
        for (std::size_t n = 1; n < x.size(); ++n) {
            CHECK(x[n] < x[n - 1]);
            CHECK(x[n] / x[n - 1] < bound);
            CHECK(abs(phi.eval(x[n]) - x[n - 1]) < tol(240));
        }
    }
    CHECK_THROWS_AS(preimage_orbit(2, 5, prec), InvalidParameter);
}

TEST_CASE("typed failures")
{
    const AnalyticSymbol sq = parse_symbol("x^2");
    const GlobalSolution sol = GlobalSolution::build(sq, RealValue(Rational(0)), 2, parse_function("1+x"));
    CHECK_THROWS_AS(extend_forward(sol, RealValue(Rational(2)), prec), BasinEscape);
    CHECK_THROWS_AS(GlobalSolution::build(parse_symbol("-x^2+x"), RealValue(Rational(0)), 2, parse_function("x")),
                    NoConvergentLocalSolution);
    CHECK_THROWS_AS(witness_demo(2, Rational(-1, 2), 8, Rational(1, 8), 40), InvalidParameter);
    CHECK_THROWS_AS(witness_demo(3, 2, 8, Rational(1, 8), 40), InvalidParameter);
    CHECK_THROWS_AS(witness_demo(3, Rational(-1, 2), 8, Rational(1, 5), 40), InvalidParameter);
    CHECK_THROWS_AS(witness_demo(3, Rational(-1, 2), 0, Rational(1, 8), 40), InvalidParameter);
}

TEST_CASE("witness report arithmetic")
{
    const WitnessReport w = witness_demo(3, Rational(-1, 2), 8, Rational(1, 8), 40);
    CHECK(w.gamma0_range.first == 1);
    CHECK(w.gamma0_range.second == 2);
    // gamma(mu - 1) = 0 by construction, so the margin is |gamma(1)| - 6c = 1 - 3/4.
    CHECK(abs(w.margin - BigFloat(Rational(1, 4), prec)) < tol(200));
    CHECK(w.orbit.size() == 40);
}
