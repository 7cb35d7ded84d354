#include <catch2/catch_amalgamated.hpp>

#include <compspec/errors.hpp>
#include <compspec/json.hpp>

using namespace compspec;

namespace
{

const std::vector<const char *> catalog = {"exp(1/2*x)", "x+1",      "x^2+x+1",   "1/2*arctan(x)", "-x",        "x",
                                           "1/2*x^3+1/2*x", "x^2",   "x^3",       "-x^2+x",        "-x^2+3/2*x", "-x^2+2*x",
                                           "-x^2+4*x",   "x^2-1",    "1/2*x-x^2"};

} // namespace

TEST_CASE("scalars round-trip")
{
    for (const Rational &q : {Rational(0), Rational(-7, 3), Rational(Integer("123456789012345678901234567890"), 7)}) {
        Rational c = q;
        c.canonicalize();
        CHECK(rational_from_json(to_json(c)) == c);
    }
    const GaussRational z(Rational(1, 2), Rational(-3));
    CHECK(to_json(z).is_array());
    CHECK(gauss_from_json(to_json(z)) == z);
    CHECK(to_json(GaussRational(5)).is_string());

    const BigFloat x = sqrt(BigFloat(2, 300));
    CHECK(bigfloat_from_json(to_json(x), 300) == x);
    const BigComplex w(exp(BigFloat(1, 200)), -sqrt(BigFloat(3, 200)));
    CHECK(to_json(bigcomplex_from_json(to_json(w), 200)) == to_json(w));

    for (const RealNumber &r : {RealNumber(Rational(3, 4)), RealNumber(QuadSurd(Rational(1, 2), Rational(3, 2), 5)),
                               RealNumber::enclosure(Rational(1, 3), Rational(1, 2))}) {
        CHECK(to_json(real_number_from_json(to_json(r))) == to_json(r));
    }
    CHECK_THROWS_AS(rational_from_json(Json(3.5)), SyntaxError);
    CHECK_THROWS_AS(gauss_from_json(Json::array({"1"})), SyntaxError);
}

TEST_CASE("property: classification reports round-trip")
{
    for (const char *s : catalog) {
        INFO(s);
        const Json j = to_json(classify(parse_symbol(s)));
        CHECK(to_json(report_from_json(j)) == j);
        CHECK(j.at("version") == json_version);
    }
}

TEST_CASE("property: reports are deterministic")
{
    for (const char *s : {"-x^2+4*x", "1/2*arctan(x)", "x^3"}) {
        CHECK(to_json(classify(parse_symbol(s))).dump() == to_json(classify(parse_symbol(s))).dump());
    }
    const auto solve = [] {
        return to_json(solve_formal(parse_symbol("1/2*arctan(x)"), RealValue(Rational(0)), 2, parse_function("exp(x)"), 16))
            .dump();
    };
    CHECK(solve() == solve());
}

TEST_CASE("solutions and evaluations round-trip")
{
    const LocalSolution exact = solve_formal(parse_symbol("-x^2+x"), RealValue(Rational(0)), 2, parse_function("x"), 24);
    const Json je = to_json(exact);
    CHECK(to_json(local_solution_from_json(je)) == je);
    CHECK(je.at("radius").at("verdict") == "diverges");

    const LocalSolution fl =
        solve_formal(parse_symbol("1/2*arctan(x)"), RealValue(Rational(0)), GaussRational(2, 1), parse_function("sin(x)"), 12);
    const Json jf = to_json(fl);
    CHECK(to_json(local_solution_from_json(jf)) == jf);
    CHECK(to_json(series_from_json(to_json(fl.series))) == to_json(fl.series));
    CHECK(to_json(radius_from_json(to_json(fl.radius))) == to_json(fl.radius));

    const GlobalSolution sol = GlobalSolution::build(parse_symbol("1/2*arctan(x)"), RealValue(Rational(0)), 2, parse_function("1"));
    const Json ev = to_json(evaluate(sol, RealValue(Rational(10)), 256));
    CHECK(to_json(evaluation_from_json(ev)) == ev);
}

TEST_CASE("obstructions, dimensions and witnesses round-trip")
{
    const CoveringObstruction c = covering_obstruction(parse_symbol("x^3"), GaussRational(0, 1), parse_pieces("(-inf,0);(-1,1);(0,inf)"));
    const Json jc = to_json(c);
    CHECK(to_json(obstruction_from_json(jc)) == jc);

    for (const DimLabel &d : {DimLabel::finite(0), DimLabel::finite(3), DimLabel::infinite("A(T)"), DimLabel::whole_space()}) {
        CHECK(dim_label_from_json(to_json(d)) == d);
    }
    const ClassificationReport r = classify(parse_symbol("x^2"));
    CHECK(to_json(eigen_dim_from_json(to_json(r.eigen))) == to_json(r.eigen));
    for (const SpectralSet &s : {r.sigma, r.sigma_p, SpectralSet::powers(RealNumber(Rational(1, 2)), true),
                                 SpectralSet::superset_of({SpectralSet::closed_disk(1), SpectralSet::real_ray(1, true)})}) {
        CHECK(to_json(spectral_set_from_json(to_json(s))) == to_json(s));
    }

    const WitnessReport w = witness_demo(3, Rational(-1, 2), 8, Rational(1, 8), 20);
    const Json jw = to_json(w);
    CHECK(to_json(witness_from_json(jw, 256)) == jw);
}
