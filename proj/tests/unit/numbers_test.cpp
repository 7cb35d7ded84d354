#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/numbers.hpp>
#include <compspec/power_series.hpp>

using namespace compspec;

namespace
{

Rational random_rational(std::mt19937 &rng, long span = 9)
{
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("rational parsing accepts fractions and literal decimals")
{
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("1.5") == Rational(3, 2));
    CHECK(parse_rational("-0.1") == Rational(-1, 10));
    CHECK(parse_rational("42") == Rational(42));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(to_string(Rational(-7, 3)) == "-7/3");
}

TEST_CASE("gaussian rationals parse in a/b+c/di form")
{
    CHECK(parse_gauss("1/2+3/4i") == GaussRational(Rational(1, 2), Rational(3, 4)));
    CHECK(parse_gauss("-i") == GaussRational(0, -1));
    CHECK(parse_gauss("1.5-2i") == GaussRational(Rational(3, 2), -2));
    CHECK(parse_gauss("0.5") == GaussRational(Rational(1, 2)));
    for (const char *s : {"2", "-1/2", "i", "1/2+3/4i", "3-i"}) {
        CHECK(to_string(parse_gauss(s)) == s);
    }
}

TEST_CASE("gaussian arithmetic")
{
    const GaussRational a(1, 2), b(3, -1);
    CHECK(a * b == GaussRational(5, 5));
    CHECK(gauss_pow(GaussRational(0, 1), 4) == GaussRational(1));
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        const GaussRational x(random_rational(rng), random_rational(rng));
        GaussRational y(random_rational(rng), random_rational(rng));
        if (y.is_zero()) {
            continue;
        }
        CHECK((x / y) * y == x);
        CHECK((x * y).norm() == x.norm() * y.norm());
    }
}

TEST_CASE("binomials and factorials match their recurrences")
{
    Integer f = 1;
    for (unsigned long n = 0; n <= 30; ++n) {
        if (n > 0) {
            f *= n;
        }
        CHECK(factorial(n) == f);
        for (unsigned long k = 1; k < n; ++k) {
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
        CHECK(binomial(n, 0) == 1);
        CHECK(binomial(n, n) == 1);
    }
}

TEST_CASE("rational powers")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        const Rational q = random_rational(rng);
        Rational p = 1;
        for (unsigned long e = 0; e < 12; ++e) {
            CHECK(rational_pow(q, e) == p);
            p *= q;
        }
    }
}

TEST_CASE("continued fraction convergents of a pi approximation")
{
    const Rational x(Integer("314159265358979"), Integer("100000000000000"));
    const auto c = convergents(x, 200);
    const std::vector<Rational> expected = {Rational(3), Rational(22, 7), Rational(333, 106), Rational(355, 113)};
    REQUIRE(c.size() >= expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(c[i] == expected[i]);
    }
}

TEST_CASE("bigfloat decimal output round-trips")
{
    const BigFloat pi = BigFloat::pi(256);
    CHECK(pi.to_string(30).rfind("3.14159265358979323846264338328", 0) == 0);
    const std::string s = pi.to_string(80);
    CHECK(BigFloat::from_string(s, 256) == pi);
    CHECK(BigFloat(Rational(1, 3), 128).to_rational() != Rational(1, 3));
    CHECK(BigFloat(Rational(3, 8), 128).to_rational() == Rational(3, 8));
    CHECK(ldexp(BigFloat(3, 64), -3) == BigFloat(Rational(3, 8), 64));
    CHECK(pow2(-10, 64) == BigFloat(Rational(1, 1024), 64));
}

TEST_CASE("quadratic surds")
{
    const QuadSurd r2 = QuadSurd::sqrt_of(2);
    CHECK((QuadSurd(1) + r2) * (QuadSurd(1) - r2) == QuadSurd(-1));
    CHECK(r2 * r2 == QuadSurd(2));
    CHECK(r2 < QuadSurd(Rational(3, 2)));
    CHECK(r2 > QuadSurd(Rational(7, 5)));
    CHECK((QuadSurd(1) - r2).sign() < 0);
    const auto [lo, hi] = (QuadSurd(3) + r2).enclosure(100);
    CHECK(lo <= hi);
    CHECK(hi - lo <= Rational(1, Integer(1) << 100));
    const BigFloat approx = (QuadSurd(3) + r2).to_bigfloat(256);
    CHECK(BigFloat(lo, 256) <= approx);
    CHECK(approx <= BigFloat(hi, 256));
    Rational root;
    CHECK(rational_sqrt(Rational(9, 4), root));
    CHECK(root == Rational(3, 2));
    CHECK_FALSE(rational_sqrt(Rational(2), root));
}

TEST_CASE("series composition agrees with expanding the polynomial")
{
    std::mt19937 rng(3);
    const std::size_t n = 8;
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> f(n + 1), g(n + 1);
        for (auto &c : f) {
            c = random_rational(rng);
        }
        g[0] = 0;
        for (std::size_t k = 1; k <= 3; ++k) {
            g[k] = random_rational(rng);
        }
        for (std::size_t k = 4; k <= n; ++k) {
            g[k] = 0;
        }
        // Oracle: Horner with full polynomial products, truncated at the end.
        std::vector<Rational> acc(1, Rational(0));
        for (std::size_t k = n + 1; k-- > 0;) {
            std::vector<Rational> next(acc.size() + g.size() - 1, Rational(0));
            for (std::size_t i = 0; i < acc.size(); ++i) {
                for (std::size_t j = 0; j < g.size(); ++j) {
                    next[i + j] += acc[i] * g[j];
                }
            }
            next[0] += f[k];
            acc = std::move(next);
        }
        const auto r = ps::compose(f, g);
        for (std::size_t k = 0; k <= n; ++k) {
            CHECK(r[k] == acc[k]);
        }
    }
}

TEST_CASE("series reversion, exp and arctan")
{
    const std::size_t n = 12;
    std::vector<Rational> d(n + 1, Rational(0));
    d[1] = 2;
    d[2] = -1;
    d[5] = Rational(1, 3);
    const auto r = ps::reversion(d);
    const auto id = ps::compose(d, r);
    for (std::size_t k = 0; k <= n; ++k) {
        CHECK(id[k] == (k == 1 ? Rational(1) : Rational(0)));
    }

    std::vector<Rational> x(n + 1, Rational(0));
    x[1] = 1;
    const auto e = ps::exp(x, Rational(1));
    const auto a = ps::arctan(x, Rational(0));
    for (std::size_t k = 0; k <= n; ++k) {
        CHECK(e[k] == Rational(1) / Rational(factorial(k)));
        const Rational at = k % 2 == 0 ? Rational(0) : Rational(k % 4 == 1 ? 1 : -1, static_cast<long>(k));
        CHECK(a[k] == at);
    }
}
