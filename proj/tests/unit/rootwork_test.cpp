#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/rootwork.hpp>

using namespace compspec;

namespace
{

using K = FixedPointRecord::Kind;

const FixedPointRecord *at(const FixedPointSet &s, const Rational &x)
{
    for (const auto &p : s.points) {
        if (p.location.as_rational() == x) {
            return &p;
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("fixed points of -x^2 + 3x")
{
    const FixedPointSet s = find_fixed_points(parse_symbol("-x^2+3*x"));
    CHECK(s.exhaustive);
    CHECK_FALSE(s.all_fixed);
    REQUIRE(s.points.size() == 2);
    const auto *zero = at(s, 0);
    const auto *two = at(s, 2);
    REQUIRE(zero);
    REQUIRE(two);
    CHECK(zero->multiplier.as_rational() == Rational(3));
    CHECK(zero->kind == K::repelling);
    CHECK(two->multiplier.as_rational() == Rational(-1));
    CHECK(two->kind == K::neutral);
}

TEST_CASE("multiplier kinds")
{
    const FixedPointSet sq = find_fixed_points(parse_symbol("x^2"));
    REQUIRE(sq.points.size() == 2);
    CHECK(at(sq, 0)->kind == K::superattracting);
    CHECK(at(sq, 1)->kind == K::repelling);

    const FixedPointSet a = find_fixed_points(parse_symbol("1/2*arctan(x)"));
    REQUIRE(a.points.size() == 1);
    CHECK(at(a, 0)->multiplier.as_rational() == Rational(1, 2));
    CHECK(at(a, 0)->kind == K::attracting);

    // x^2 - 1: fixed points (1 +- sqrt 5)/2 with multipliers 1 +- sqrt 5.
    const FixedPointSet q = find_fixed_points(parse_symbol("x^2-1"));
    REQUIRE(q.points.size() == 2);
    for (const auto &p : q.points) {
        CHECK(p.kind == K::repelling);
        const Rational m = p.multiplier.to_bigfloat(128).to_rational();
        const Rational loc = p.location.to_bigfloat(128).to_rational();
        CHECK(abs(m - 2 * loc) < Rational(1, 1000000));
    }
    CHECK(classify_multiplier(RealNumber(Rational(-1, 3))) == K::attracting);
    CHECK(classify_multiplier(RealNumber(Rational(1))) == K::neutral);
}

TEST_CASE("fixed-point-free and identity symbols")
{
    const FixedPointSet t = find_fixed_points(parse_symbol("x+1"));
    CHECK(t.points.empty());
    CHECK_FALSE(t.all_fixed);
    CHECK(find_fixed_points(parse_symbol("x")).all_fixed);
    // A transcendental map without fixed points: exp(x/2) > x.
    CHECK(find_fixed_points(parse_symbol("exp(1/2*x)")).points.empty());
}

TEST_CASE("second iterate of an involution")
{
    const SymbolAnalysis a = analyze(parse_symbol("-x"));
    CHECK(a.is_involution);
    CHECK(a.fixed_points_sq.all_fixed);
    const FixedPointSet two = find_fixed_points_second_iterate(parse_symbol("-x^2+4*x"));
    // phi has 0 and 3; phi^[2] adds the 2-cycle (5 +- sqrt 5)/2.
    CHECK(two.points.size() == 4);
}

TEST_CASE("critical points and diffeomorphism tests")
{
    const auto c = critical_points(parse_symbol("-x^2+x"));
    REQUIRE(c.size() == 1);
    CHECK(c[0].as_rational() == Rational(1, 2));
    CHECK(is_diffeomorphism(parse_symbol("1/2*x^3+1/2*x")).value == Tri::yes);
    CHECK(is_diffeomorphism(parse_symbol("x^3")).value == Tri::no);
    CHECK(is_diffeomorphism(parse_symbol("x^2")).value == Tri::no);
    CHECK(is_diffeomorphism(parse_symbol("x+1")).value == Tri::yes);
    CHECK(critical_set_bounded_away(parse_symbol("x+1"), End::upper) == Tri::yes);
}

TEST_CASE("attraction basins")
{
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const BasinVerdict v = attraction_basin_check(phi, parse_interval("(-1,1)"), 10000, 64);
    CHECK(v.kind != BasinVerdict::Kind::failed);
    // Outside (-1,1) under x^2 the orbit escapes.
    const AnalyticSymbol sq = parse_symbol("x^2");
    const BasinVerdict w = attraction_basin_check(sq, parse_interval("(-1/2,1/2)"), 200, 16, {Rational(3)});
    CHECK(w.kind == BasinVerdict::Kind::failed);
    CHECK_THROWS_AS(attraction_basin_check(sq, parse_interval("(1/2,2)")), HypothesisViolation);
}

TEST_CASE("analysis sign against the identity")
{
    CHECK(analyze(parse_symbol("x+1")).sign_vs_id == SignVsId::above);
    CHECK(analyze(parse_symbol("x^2+x+1")).sign_vs_id == SignVsId::above);
    CHECK(analyze(parse_symbol("x-1")).sign_vs_id == SignVsId::below);
}

namespace
{

Polynomial random_poly(std::mt19937 &rng, int max_degree)
{
    std::uniform_int_distribution<int> deg(2, max_degree);
    std::uniform_int_distribution<long> c(-6, 6);
    std::vector<Rational> v(deg(rng) + 1);
    for (auto &x : v) {
        x = Rational(c(rng), 3);
        x.canonicalize();
    }
    if (v.back() == 0) {
        v.back() = 1;
    }
    return Polynomial(v);
}

} // namespace

TEST_CASE("property: Sturm completeness of fixed point isolation")
{
    std::mt19937 rng(201);
    const Rational width(1, Integer("1000000000000000000000000000000"));
    for (int t = 0; t < 200; ++t) {
        const Polynomial p = random_poly(rng, 8);
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(p);
        const Polynomial g = p - Polynomial::identity();
        if (g.is_zero()) {
            continue;
        }
        const FixedPointSet s = find_fixed_points(phi);
        const SturmSequence sturm(squarefree_part(g));
        CHECK(static_cast<int>(s.points.size()) == sturm.count(Interval::real_line()));
        for (const auto &fp : s.points) {
            if (fp.location.as_rational()) {
                CHECK(g(*fp.location.as_rational()) == 0);
                continue;
            }
            const auto [lo, hi] = fp.location.enclose(110);
            CHECK(hi - lo < width);
            // Still a sign change of the squarefree part.
            const Polynomial sf = squarefree_part(g);
            CHECK(sf(lo) * sf(hi) < 0);
        }
    }
}

TEST_CASE("property: fixed points of phi are fixed points of phi^[2]")
{
    std::mt19937 rng(202);
    for (int t = 0; t < 30; ++t) {
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(random_poly(rng, 4));
        const FixedPointSet one = find_fixed_points(phi);
        const FixedPointSet two = find_fixed_points_second_iterate(phi);
        if (two.all_fixed) {
            continue;
        }
        for (const auto &p : one.points) {
            bool found = false;
            for (const auto &q : two.points) {
                found = found || same_point(p.location, q.location);
            }
            CHECK(found);
        }
    }
}

TEST_CASE("property: multipliers are invariant under affine conjugation")
{
    std::mt19937 rng(203);
    for (int t = 0; t < 30; ++t) {
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(random_poly(rng, 4));
        Rational a(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 3) + 1), b(static_cast<long>(rng() % 7) - 3, 2);
        a.canonicalize();
        b.canonicalize();
        if (rng() % 2) {
            a = -a;
        }
        const Diffeomorphism delta = Diffeomorphism::affine(a, b);
        const AnalyticSymbol psi = conjugate(phi, delta);
        const FixedPointSet s = find_fixed_points(phi);
        const FixedPointSet c = find_fixed_points(psi);
        REQUIRE(s.points.size() == c.points.size());
        for (const auto &p : s.points) {
            // delta^{-1}(u) = (u - b)/a
            const BigFloat v = (p.location.to_bigfloat(200) - BigFloat(b, 200)) / BigFloat(a, 200);
            bool matched = false;
            for (const auto &q : c.points) {
                if (abs(q.location.to_bigfloat(200) - v) < pow2(-150, 200)) {
                    matched = true;
                    const BigFloat dm = abs(q.multiplier.to_bigfloat(200) - p.multiplier.to_bigfloat(200));
                    CHECK(dm < pow2(-150, 200));
                    if (auto pm = p.multiplier.as_rational()) {
                        CHECK(q.multiplier.as_rational() == pm);
                    }
                }
            }
            CHECK(matched);
        }
    }
}
