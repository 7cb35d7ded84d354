#include <benchmark/benchmark.h>

#include <compspec/continuation.hpp>
#include <compspec/taxonomy.hpp>

using namespace compspec;

static void BM_SolveFormalExact(benchmark::State &state)
{
    const AnalyticSymbol phi = parse_symbol("-x^2+x");
    const Expr gamma = parse_function("x");
    const auto order = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_formal(phi, RealValue(Rational(0)), 2, gamma, order));
    }
}
BENCHMARK(BM_SolveFormalExact)->Arg(20)->Arg(40)->Arg(80);

static void BM_SolveFormalFloat(benchmark::State &state)
{
    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const Expr gamma = parse_function("sin(x)+exp(x)");
    const auto order = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_formal(phi, RealValue(Rational(0)), GaussRational(2, 1), gamma, order));
    }
}
BENCHMARK(BM_SolveFormalFloat)->Arg(20)->Arg(40);

static void BM_Classify(benchmark::State &state)
{
    static const char *const symbols[] = {"x^2+x+1", "1/2*arctan(x)", "-x^2+4*x", "1/2*x^3+1/2*x"};
    const AnalyticSymbol phi = parse_symbol(symbols[state.range(0)]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify(phi));
    }
    state.SetLabel(symbols[state.range(0)]);
}
BENCHMARK(BM_Classify)->DenseRange(0, 3);

static void BM_EvaluateArctan(benchmark::State &state)
{
    const auto prec = static_cast<mpfr_prec_t>(state.range(0));
    GlobalOptions options;
    options.precision = prec;
    const GlobalSolution sol =
        GlobalSolution::build(parse_symbol("1/2*arctan(x)"), RealValue(Rational(0)), 2, parse_function("x+exp(x)"), options);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(sol, RealValue(Rational(10)), prec));
    }
}
BENCHMARK(BM_EvaluateArctan)->Arg(256)->Arg(1024);

static void BM_FixedPoints(benchmark::State &state)
{
    // Wilkinson-type polynomial shifted by x: fixed points at 1..n.
    const long n = state.range(0);
    Polynomial p({Rational(1)});
    for (long k = 1; k <= n; ++k) {
        p = p * Polynomial({Rational(-k), Rational(1)});
    }
    const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(p + Polynomial::identity());
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_fixed_points(phi));
    }
}
BENCHMARK(BM_FixedPoints)->Arg(5)->Arg(10)->Arg(20);
BENCHMARK_MAIN();
