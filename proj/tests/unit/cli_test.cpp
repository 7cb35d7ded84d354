#include <cstdlib>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include <compspec/json.hpp>

#include "cli.hpp"

using namespace compspec;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("exit codes")
{
    CHECK(run({"classify", "--symbol", "x^2"}).code == cli::ok);
    CHECK(run({"--help"}).code == cli::ok);
    CHECK(run({}).code == cli::usage_error);
    CHECK(run({"classify"}).code == cli::usage_error);
    CHECK(run({"solve", "--symbol", "x^2", "--gamma", "x"}).code == cli::usage_error);
    CHECK(run({"eval", "--symbol", "1/2*x", "--lambda", "2", "--gamma", "x"}).code == cli::usage_error);
    CHECK(run({"classify", "--symbol", "x^2", "--format", "yaml"}).code == cli::usage_error);
    CHECK(run({"classify", "--symbol", "x/2"}).code == cli::usage_error);
    CHECK(run({"classify", "--symbol", "x^2", "--precision", "8"}).code == cli::usage_error);

    const Result res = run({"solve", "--symbol", "1/2*x", "--lambda", "1/4", "--gamma", "x"});
    CHECK(res.code == cli::math_error);
    CHECK_THAT(res.err, Catch::Matchers::ContainsSubstring("ResonantEigenvalue"));
    CHECK(run({"eval", "--symbol", "x^2", "--lambda", "2", "--gamma", "1+x", "--at", "2"}).code == cli::math_error);
    // Parameters outside the stated range are usage errors.
    CHECK(run({"orbit", "--mu", "2"}).code == cli::usage_error);
}

TEST_CASE("errors in json mode are documents")
{
    const Result r = run({"--format", "json", "solve", "--symbol", "1/2*x", "--lambda", "0", "--gamma", "x"});
    CHECK(r.code == cli::math_error);
    const Json j = Json::parse(r.out);
    CHECK(j.at("error") == "ZeroLambda");
    CHECK(j.contains("message"));
}

TEST_CASE("precision from the environment")
{
    const auto prec_of = [] {
        const Result r = run({"--format", "json", "orbit", "--mu", "3", "--n", "4"});
        REQUIRE(r.code == cli::ok);
        return Json::parse(r.out).at("precision").get<long>();
    };
    ::unsetenv("COMPSPEC_PRECISION");
    CHECK(prec_of() == 256);
    ::setenv("COMPSPEC_PRECISION", "512", 1);
    CHECK(prec_of() == 512);
    const Result flag = run({"--format", "json", "--precision", "128", "orbit", "--mu", "3", "--n", "4"});
    CHECK(Json::parse(flag.out).at("precision") == 128);
    ::setenv("COMPSPEC_PRECISION", "lots", 1);
    CHECK(run({"orbit", "--mu", "3"}).code == cli::usage_error);
    ::unsetenv("COMPSPEC_PRECISION");
}

TEST_CASE("property: json output is byte-identical across runs")
{
    const std::vector<std::vector<std::string>> cmds = {
        {"--format", "json", "classify", "--symbol", "-x^2+4*x"},
        {"--format", "json", "solve", "--symbol", "-x^2+x", "--lambda", "2", "--gamma", "x", "--order", "20"},
        {"--format", "json", "eval", "--symbol", "1/2*arctan(x)", "--lambda", "2", "--gamma", "1", "--at", "3"},
        {"--format", "json", "koenigs", "--symbol", "1/2*x-x^2", "--order", "8"},
        {"--format", "json", "orbit", "--mu", "5/2", "--n", "10"},
        {"--format", "json", "obstruct", "--symbol", "x^3", "--lambda", "2", "--pieces", "(-inf,0);(-1,1);(0,inf)"},
        {"--format", "json", "demo45", "--n", "20"},
    };
    for (const auto &c : cmds) {
        const Result a = run(c), b = run(c);
        INFO(c[2]);
        CHECK(a.code == cli::ok);
        CHECK(a.out == b.out);
        CHECK_NOTHROW(Json::parse(a.out));
    }
}

TEST_CASE("command documents parse back into reports")
{
    const Json c = Json::parse(run({"--format", "json", "classify", "--symbol", "-x^2+3/2*x"}).out);
    CHECK(c.at("case") == "Prop 4.4");
    CHECK(to_json(report_from_json(c)) == c);

    Json s = Json::parse(run({"--format", "json", "solve", "--symbol", "1/2*x", "--lambda", "5", "--gamma", "1+x^2",
                              "--order", "6"})
                             .out);
    s.erase("orientation");
    s.erase("notes");
    const LocalSolution ls = local_solution_from_json(s);
    CHECK(ls.series.real_rationals()[2] == Rational(-4, 19));

    const Json o = Json::parse(
        run({"--format", "json", "obstruct", "--symbol", "x^3", "--lambda", "-1", "--pieces", "(-inf,0);(-1,1);(0,inf)"}).out);
    CHECK(obstruction_from_json(o).verdict == CoveringObstruction::Verdict::not_surjective);

    const Json w = Json::parse(run({"--format", "json", "demo45"}).out);
    CHECK(witness_from_json(w, 256).margin.sign() > 0);
}

TEST_CASE("text reports")
{
    const Result d = run({"solve", "--symbol", "-x^2+x", "--lambda", "2", "--gamma", "x", "--order", "30"});
    CHECK(d.code == cli::ok);
    CHECK_THAT(d.out, Catch::Matchers::ContainsSubstring("verdict: diverges"));
    const Result e = run({"eval", "--symbol", "1/2*x", "--lambda", "5", "--gamma", "1+x^2", "--at", "100"});
    CHECK_THAT(e.out, Catch::Matchers::ContainsSubstring("-160019/76"));
}

TEST_CASE("section1 orientation negates gamma and lambda")
{
    // f - f(phi)/lambda = gamma  <=>  f(phi) - lambda f = -lambda gamma
    const Json a = Json::parse(run({"--format", "json", "solve", "--symbol", "1/2*x", "--lambda", "5", "--gamma", "1+x^2",
                                    "--orientation", "section1", "--order", "4"})
                                   .out);
    const Json b = Json::parse(
        run({"--format", "json", "solve", "--symbol", "1/2*x", "--lambda", "5", "--gamma", "-5-5*x^2", "--order", "4"}).out);
    CHECK(a.at("series") == b.at("series"));
    CHECK(a.at("orientation") == "section1");
    CHECK(run({"solve", "--symbol", "1/2*x", "--lambda", "1+i", "--gamma", "x", "--orientation", "section1"}).code ==
          cli::usage_error);
}
