#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/expression.hpp>

using namespace compspec;

namespace
{

constexpr mpfr_prec_t prec = 256;

BigFloat bf(const Rational &q)
{
    return BigFloat(q, prec);
}

bool close(const BigFloat &a, const BigFloat &b, long bits = 240)
{
    return abs(a - b) <= pow2(-bits, prec) * (BigFloat(1, prec) + abs(b));
}

} // namespace

TEST_CASE("printing is a fixed point of parsing")
{
    for (const char *s : {"-x^2+3/2*x", "1/2*arctan(x)", "exp(1/2*x)", "x^3+x", "(x+1)^2*sin(x)", "-(x-1)",
                          "exp(x)+(-1)*exp(-x)", "2*x^8-x^9", "x*x*x"}) {
        const Expr e = parse_expression(s);
        const std::string printed = to_string(e);
        CHECK(to_string(parse_expression(printed)) == printed);
        for (const Rational x : {Rational(-2), Rational(1, 3), Rational(5, 4)}) {
            CHECK(close(eval(parse_expression(printed), bf(x)), eval(e, bf(x))));
        }
    }
}

TEST_CASE("syntax errors carry positions")
{
    for (const char *s : {"x/2", "x^", "x^-1", "exp x", "(x+1", "y", "", "x**2", "1/0*x"}) {
        CHECK_THROWS_AS(parse_expression(s), SyntaxError);
    }
    try {
        parse_expression("x+*2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError &e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("polynomial folding and exact evaluation")
{
    const auto p = as_polynomial(parse_expression("(x+1)^2-x^2+exp(0)*x+arctan(0)"));
    REQUIRE(p);
    CHECK(*p == Polynomial({Rational(1), Rational(3)}));
    CHECK_FALSE(as_polynomial(parse_expression("exp(x)")));
    CHECK(eval_exact(parse_expression("exp(x-1)+x^2"), Rational(1)) == Rational(2));
    CHECK_FALSE(eval_exact(parse_expression("exp(x)"), Rational(1)));
    CHECK(eval_exact(parse_expression("-x^2+3/2*x"), Rational(1, 2)) == Rational(1, 2));
    CHECK(depends_on_x(parse_expression("sin(x)")));
    CHECK_FALSE(depends_on_x(parse_expression("exp(2)")));
}

TEST_CASE("floating evaluation against MPFR")
{
    const BigFloat x = bf(Rational(7, 5));
    CHECK(close(eval(parse_expression("exp(1/2*x)"), x), exp(x / BigFloat(2, prec))));
    CHECK(close(eval(parse_expression("1/2*arctan(x)"), x), atan(x) / BigFloat(2, prec)));
    CHECK(close(eval(parse_expression("sin(x)^2"), x), sin(x) * sin(x)));
    const Dual d = eval_dual(parse_expression("arctan(x)"), x);
    CHECK(close(d.slope, BigFloat(1, prec) / (BigFloat(1, prec) + x * x)));
    const Dual e = eval_dual(parse_expression("x^3*exp(x)"), x);
    CHECK(close(e.slope, (BigFloat(3, prec) * x * x + x * x * x) * exp(x)));
}

TEST_CASE("Taylor jets match known series")
{
    const auto s = jet_exact(parse_expression("sin(x)"), 0, 9);
    REQUIRE(s);
    for (std::size_t k = 0; k <= 9; ++k) {
        Rational expected = 0;
        if (k % 2 == 1) {
            expected = Rational(k % 4 == 1 ? 1 : -1) / Rational(factorial(k));
        }
        CHECK((*s)[k] == expected);
    }
    // (1 + x)^3 recentred at 2: coefficients of (3 + t)^3.
    const auto c = jet_exact(parse_expression("(1+x)^3"), 2, 4);
    REQUIRE(c);
    CHECK(*c == std::vector<Rational>{27, 27, 9, 1, 0});
    CHECK_FALSE(jet_exact(parse_expression("exp(x)"), 1, 3));
    const auto f = jet_float(parse_expression("exp(x)"), bf(1), 6);
    const BigFloat e1 = exp(bf(1));
    for (std::size_t k = 0; k <= 6; ++k) {
        CHECK(close(f[k], e1 / BigFloat(Rational(factorial(k)), prec)));
    }
}

TEST_CASE("substitution, monotone inversion and limits")
{
    const Expr sq = expr::substitute(parse_expression("x^2"), parse_expression("x+1"));
    CHECK(eval_exact(sq, 2) == Rational(9));
    CHECK(close(solve_monotone(parse_expression("x^3+x"), 1, bf(10)), bf(2)));
    CHECK(close(solve_monotone(parse_expression("-exp(x)+(-1)*x"), -1, bf(-1)), bf(0)));

    const Limit a = limit_at(parse_expression("exp(x)"), ExtRational::neg_inf(), prec);
    CHECK(a.kind == Limit::Kind::finite);
    CHECK(a.approx.is_zero());
    CHECK(limit_at(parse_expression("-x^2"), ExtRational::pos_inf(), prec).kind == Limit::Kind::neg_inf);
    const Limit b = limit_at(parse_expression("arctan(x)"), ExtRational::pos_inf(), prec);
    REQUIRE(b.kind == Limit::Kind::finite);
    CHECK(abs(b.approx - BigFloat::pi(prec) / BigFloat(2, prec)) < pow2(-100, prec));
}
