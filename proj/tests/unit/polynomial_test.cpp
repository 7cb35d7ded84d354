#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/polynomial.hpp>
#include <compspec/real_number.hpp>

using namespace compspec;

namespace
{

Polynomial from_roots(const std::vector<Rational> &roots)
{
    Polynomial p = Polynomial::constant(1);
    for (const auto &r : roots) {
        p *= Polynomial({-r, Rational(1)});
    }
    return p;
}

} // namespace

TEST_CASE("interval parsing and set operations")
{
    const Interval r = parse_interval("(-inf,inf)");
    CHECK(r.is_real_line());
    const Interval a = parse_interval("(0,3/2)");
    CHECK(a.to_string() == "(0,3/2)");
    CHECK(a.contains(Rational(1)));
    CHECK_FALSE(a.contains(Rational(0)));
    CHECK_FALSE(a.contains(Rational(3, 2)));
    CHECK(parse_interval("(0, 1.5)") == a);
    const auto i = a.intersect(parse_interval("(1,inf)"));
    REQUIRE(i);
    CHECK(*i == parse_interval("(1,3/2)"));
    CHECK_FALSE(a.intersect(parse_interval("(2,3)")));
    CHECK(a.contains(a.interior_point()));
    for (const auto &g : parse_interval("(-inf,-5)").grid(9)) {
        CHECK(g < -5);
    }
    CHECK_THROWS_AS(parse_interval("(1,0)"), Error);
    CHECK_THROWS_AS(parse_interval("[0,1]"), Error);
}

TEST_CASE("interval unions")
{
    const IntervalUnion u({parse_interval("(-1,0)"), parse_interval("(2,3)")});
    CHECK(u.contains(Rational(-1, 2)));
    CHECK_FALSE(u.contains(Rational(1)));
    const IntervalUnion v({parse_interval("(-1/2,5/2)")});
    const IntervalUnion w = u.intersect(v);
    REQUIRE(w.parts().size() == 2);
    CHECK(w.parts()[0] == parse_interval("(-1/2,0)"));
    CHECK(w.parts()[1] == parse_interval("(2,5/2)"));
    CHECK(covers({IntervalUnion({parse_interval("(-inf,1)")}), IntervalUnion({parse_interval("(0,inf)")})},
                 Interval::real_line()));
    CHECK_FALSE(covers({IntervalUnion({parse_interval("(-inf,0)")}), IntervalUnion({parse_interval("(0,inf)")})},
                       Interval::real_line()));
}

TEST_CASE("polynomial algebra identities")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> c(-6, 6);
    auto random_poly = [&](int deg) {
        std::vector<Rational> v(deg + 1);
        for (auto &x : v) {
            x = c(rng);
        }
        if (v.back() == 0) {
            v.back() = 1;
        }
        return Polynomial(v);
    };
    for (int t = 0; t < 20; ++t) {
        const Polynomial p = random_poly(4), q = random_poly(2);
        Rational x(c(rng), 3), s(c(rng), 2);
        x.canonicalize();
        s.canonicalize();
        CHECK(p.compose(q)(x) == p(q(x)));
        CHECK(p.shift(s)(x) == p(x + s));
        CHECK((p * q)(x) == p(x) * q(x));
        const auto [quot, rem] = divmod(p, q);
        CHECK(quot * q + rem == p);
        CHECK(rem.degree() < q.degree());
        // Product rule.
        CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
        CHECK(p.pow(3) == p * p * p);
    }
    const Polynomial p({Rational(1), Rational(-2), Rational(3)});
    CHECK(p.limit(ExtRational::pos_inf()) == ExtRational::pos_inf());
    CHECK(Polynomial({Rational(0), Rational(0), Rational(0), Rational(-1)}).limit(ExtRational::neg_inf()) ==
          ExtRational::pos_inf());
    CHECK(BigFloat(p(Rational(5, 2)), 128) == p(BigFloat(Rational(5, 2), 128)));
}

TEST_CASE("gcd and squarefree part")
{
    const Polynomial a = from_roots({1, 1, 2, Rational(-1, 3)});
    const Polynomial b = from_roots({1, 5});
    CHECK(gcd(a, b).monic() == from_roots({1}));
    CHECK(squarefree_part(a).monic() == from_roots({1, 2, Rational(-1, 3)}));
}

TEST_CASE("Sturm counts and root isolation find planted roots")
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 7);
    for (int t = 0; t < 15; ++t) {
        std::vector<Rational> roots;
        while (roots.size() < 4) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) {
                roots.push_back(r);
            }
        }
        std::sort(roots.begin(), roots.end());
        // x^2 + 1 contributes no real roots.
        const Polynomial p = from_roots(roots) * Polynomial({Rational(1), Rational(0), Rational(1)});
        const SturmSequence s(squarefree_part(p));
        CHECK(s.count(Interval::real_line()) == 4);
        CHECK(s.count(Interval(ExtRational(roots[0]), ExtRational(roots[3]))) == 2);
        const auto iso = isolate_roots(p, Interval::real_line());
        REQUIRE(iso.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(iso[i].lo <= roots[i]);
            CHECK(roots[i] <= iso[i].hi);
        }
    }
}

TEST_CASE("irrational roots are separated and refined")
{
    // x^2 - 2 on (0, inf)
    const Polynomial p({Rational(-2), Rational(0), Rational(1)});
    const auto iso = isolate_roots(p, parse_interval("(0,inf)"));
    REQUIRE(iso.size() == 1);
    RealAlgebraic a(p, iso[0].lo, iso[0].hi);
    a.refine(200);
    CHECK(a.hi() - a.lo() <= Rational(1, Integer(1) << 200));
    const BigFloat r = a.to_bigfloat(256);
    CHECK(abs(r * r - BigFloat(2, 256)) < pow2(-240, 256));
    CHECK(a.sign_of(Polynomial({Rational(-3, 2), Rational(1)})) < 0);
    CHECK(a.is_root_of(from_roots({3}) * p));
    CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
}

TEST_CASE("real numbers compare exactly")
{
    const RealNumber half(Rational(1, 2));
    CHECK(half.as_rational() == Rational(1, 2));
    const RealNumber s(QuadSurd(Rational(1), Rational(1), Rational(2)));
    CHECK(s.compare(Rational(2)) == 1);
    CHECK(s.compare(Rational(5, 2)) == -1);
    CHECK(s.pow(2).compare(Rational(5)) == 1);
    CHECK(s.negated().compare_abs(Rational(12, 5)) == 1);
    CHECK(same_point(s, RealNumber(QuadSurd(Rational(1), Rational(1), Rational(2)))));
    const auto [lo, hi] = s.enclose(64);
    CHECK(lo < hi);
    CHECK(hi - lo <= Rational(1, Integer(1) << 64));
}
