#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/symbol.hpp>

using namespace compspec;

namespace
{

constexpr mpfr_prec_t prec = 256;

bool close(const BigFloat &a, const BigFloat &b, long bits = 200)
{
    return abs(a - b) <= pow2(-bits, prec) * (BigFloat(1, prec) + abs(b));
}

} // namespace

TEST_CASE("symbols must be non-constant self-maps")
{
    CHECK_NOTHROW(parse_symbol("-x^2+x", parse_interval("(0,1)")));
    CHECK_THROWS_AS(parse_symbol("x+1", parse_interval("(0,1)")), NotSelfMap);
    CHECK_THROWS_AS(parse_symbol("3", Interval::real_line()), ConstantSymbol);
    CHECK_THROWS_AS(parse_symbol("x^2", parse_interval("(1/2,2)")), NotSelfMap);
    CHECK_NOTHROW(parse_symbol("x^2", parse_interval("(0,1)")));
    CHECK_NOTHROW(parse_symbol("exp(1/2*x)", Interval::real_line()));
}

TEST_CASE("evaluation, derivatives and iterates")
{
    const AnalyticSymbol phi = parse_symbol("-x^2+3*x");
    REQUIRE(phi.is_polynomial());
    const RealValue y = phi.iterate(3, RealValue(Rational(1, 2)), prec);
    // 1/2 -> 5/4 -> 35/16 -> (1680 - 1225)/256
    REQUIRE(y.is_exact());
    CHECK(y.rational() == Rational(455, 256));
    CHECK(phi.derivative(RealValue(Rational(1)), prec).rational() == 1);
    const TruncatedSeries j = phi.jet(RealValue(Rational(2)), 3, prec);
    REQUIRE(j.exact());
    // phi(2 + t) = 2 - t - t^2
    CHECK(j.real_rationals() == std::vector<Rational>{2, -1, -1, 0});

    const AnalyticSymbol a = parse_symbol("1/2*arctan(x)");
    const BigFloat x(3, prec);
    CHECK(close(a.eval(x), atan(x) / BigFloat(2, prec)));
    CHECK(close(a.derivative(x), BigFloat(1, prec) / (BigFloat(2, prec) * (BigFloat(1, prec) + x * x))));
}

TEST_CASE("affine conjugation is exact")
{
    const AnalyticSymbol phi = parse_symbol("1/2*x");
    const AnalyticSymbol psi = conjugate(phi, Diffeomorphism::affine(2, 1));
    // delta^{-1}(phi(delta(y))) = ((2y+1)/2 - 1)/2
    REQUIRE(psi.is_polynomial());
    CHECK(psi.polynomial() == Polynomial({Rational(-1, 4), Rational(1, 2)}));
}

TEST_CASE("transcendental conjugation keeps provenance")
{
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const Diffeomorphism delta = Diffeomorphism::parse("exp(x)+(-1)*exp(-1*x)");
    CHECK(delta.orientation() == 1);
    CHECK(delta.codomain().is_real_line());
    const AnalyticSymbol psi = conjugate(phi, delta);
    REQUIRE(psi.provenance());
    CHECK(psi.provenance()->kind == Provenance::Kind::conjugate);
    for (const Rational t : {Rational(-3), Rational(1, 7), Rational(2)}) {
        const BigFloat y(t, prec);
        const RealValue dy = delta.apply(RealValue(y), prec);
        const BigFloat lhs = delta.apply(RealValue(psi.eval(y)), prec).to_bigfloat(prec);
        CHECK(close(lhs, phi.eval(dy.to_bigfloat(prec)), 180));
    }
}

TEST_CASE("inverse symbols")
{
    const AnalyticSymbol phi = parse_symbol("1/2*x^3+1/2*x");
    const AnalyticSymbol inv = inverse_symbol(phi);
    const BigFloat x(Rational(5, 3), prec);
    CHECK(close(inv.eval(phi.eval(x)), x));
    CHECK_THROWS_AS(inverse_symbol(parse_symbol("x^2")), NotADiffeomorphism);
}

TEST_CASE("quadratic normal form")
{
    // -x^2 + 3x: fixed points 0 and 2, mu = 1 + sqrt(4) = 3.
    const QuadraticNormalForm n = normalize_quadratic(-1, 3, 0);
    REQUIRE(n.has_fixed_points);
    CHECK(n.mu == QuadSurd(3));
    CHECK(n.u == QuadSurd(0));
    CHECK(n.v == QuadSurd(2));
    // x^2 + x + 1 has none.
    CHECK_FALSE(normalize_quadratic(1, 1, 1).has_fixed_points);
    // 2x^2 - x: D = 4, mu = 3; the conjugate is -y^2 + 3y.
    const QuadraticNormalForm m = normalize_quadratic(2, -1, 0);
    REQUIRE(m.has_fixed_points);
    CHECK(m.mu == QuadSurd(3));
    REQUIRE(m.conjugated.size() == 3);
    CHECK(m.conjugated[0] == QuadSurd(0));
    CHECK(m.conjugated[1] == QuadSurd(3));
    CHECK(m.conjugated[2] == QuadSurd(-1));
    // Irrational mu: x^2 - 1 has D = 5.
    const QuadraticNormalForm s = normalize_quadratic(1, 0, -1);
    CHECK(s.mu == QuadSurd(Rational(1), Rational(1), Rational(5)));
}

namespace
{

Polynomial random_poly(std::mt19937 &rng, int max_degree)
{
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_int_distribution<long> c(-5, 5);
    std::vector<Rational> v(deg(rng) + 1);
    for (auto &x : v) {
        x = Rational(c(rng), 2);
        x.canonicalize();
    }
    if (v.back() == 0) {
        v.back() = 1;
    }
    return Polynomial(v);
}

} // namespace

TEST_CASE("property: jet coefficients are derivatives over k!")
{
    std::mt19937 rng(101);
    for (int t = 0; t < 40; ++t) {
        const Polynomial p = random_poly(rng, 7);
        if (p.degree() < 1) {
            continue;
        }
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(p);
        Rational u(static_cast<long>(rng() % 11) - 5, 3);
        u.canonicalize();
        const std::size_t n = 9;
        const auto jet = phi.jet(RealValue(u), n, prec).real_rationals();
        Polynomial d = p;
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(jet[k] * Rational(factorial(k)) == d(u));
            d = d.derivative();
        }
    }
}

TEST_CASE("property: iterate(m + n) = iterate(m) o iterate(n)")
{
    std::mt19937 rng(102);
    const AnalyticSymbol phi = parse_symbol("-1/2*x^2+x+1/3");
    for (int t = 0; t < 10; ++t) {
        Rational x(static_cast<long>(rng() % 9) - 4, 5);
        x.canonicalize();
        const unsigned m = rng() % 3, n = rng() % 3;
        const RealValue whole = phi.iterate(m + n, RealValue(x), prec);
        const RealValue split = phi.iterate(m, phi.iterate(n, RealValue(x), prec), prec);
        REQUIRE(whole.is_exact());
        CHECK(whole == split);
    }
}

TEST_CASE("property: conjugating back recovers phi")
{
    std::mt19937 rng(103);
    for (int t = 0; t < 10; ++t) {
        const Polynomial p = random_poly(rng, 4);
        if (p.degree() < 1) {
            continue;
        }
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(p);
        Rational a(static_cast<long>(rng() % 7) + 1, static_cast<long>(rng() % 3) + 1), b(static_cast<long>(rng() % 9) - 4);
        a.canonicalize();
        if (rng() % 2) {
            a = -a;
        }
        const Diffeomorphism delta = Diffeomorphism::affine(a, b);
        const AnalyticSymbol back = conjugate(conjugate(phi, delta), delta.inverse());
        for (int k = 0; k < 20; ++k) {
            const Rational x(k - 10, 3);
            CHECK(back.eval(RealValue(x), prec) == phi.eval(RealValue(x), prec));
        }
    }
    // A transcendental delta: equality up to rounding.
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const Diffeomorphism delta = Diffeomorphism::parse("x^3+x");
    const AnalyticSymbol back = conjugate(conjugate(phi, delta), delta.inverse());
    for (int k = 0; k < 20; ++k) {
        const BigFloat x(Rational(k - 10, 4), prec);
        CHECK(close(back.eval(x), phi.eval(x), 180));
    }
}

TEST_CASE("property: normal form has mu >= 1")
{
    std::mt19937 rng(104);
    std::uniform_int_distribution<long> c(-9, 9);
    int with_points = 0;
    for (int t = 0; t < 200; ++t) {
        Rational a(c(rng), 3), b(c(rng), 2), k(c(rng), 4);
        a.canonicalize();
        b.canonicalize();
        k.canonicalize();
        if (a == 0) {
            continue;
        }
        const QuadraticNormalForm n = normalize_quadratic(a, b, k);
        if (!n.has_fixed_points) {
            continue;
        }
        ++with_points;
        CHECK(n.mu >= QuadSurd(1));
        // The conjugate is -y^2 + mu y.
        REQUIRE(n.conjugated.size() == 3);
        CHECK(n.conjugated[0] == QuadSurd(0));
        CHECK(n.conjugated[1] == n.mu);
        CHECK(n.conjugated[2] == QuadSurd(-1));
    }
    CHECK(with_points > 50);
}
