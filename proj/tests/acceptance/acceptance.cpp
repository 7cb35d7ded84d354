// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <compspec/errors.hpp>
#include <compspec/json.hpp>
#include <compspec/power_series.hpp>

using namespace compspec;

namespace
{

// Pinned tolerances.
constexpr double catalog_seconds = 5.0;
constexpr double divergence_seconds = 1.0;
constexpr double residual_suite_seconds = 30.0;
constexpr long extension_bits = 224;
constexpr mpfr_prec_t extension_prec = 256;
constexpr const char *orbit_ratio_tol = "0.000001";
constexpr const char *orbit_forward_tol = "0.00000000000000000001";
constexpr mpfr_prec_t orbit_prec = 512;

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string &what)
    {
        if (!cond) {
            if (ok) {
                why << what;
            }
            ok = false;
        }
    }
};

BigFloat larger(const BigFloat &a, const BigFloat &b)
{
    return a < b ? b : a;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational rnd(std::mt19937 &rng, long span, long den)
{
    Rational q(static_cast<long>(rng() % (2 * span + 1)) - span, static_cast<long>(rng() % den) + 1);
    q.canonicalize();
    return q;
}

BigFloat dec(const char *s, mpfr_prec_t prec)
{
    return BigFloat(parse_rational(s), prec);
}

// --- 1 ------------------------------------------------------------------

struct CatalogEntry {
    const char *symbol;
    SpectralSet sigma_p;
    SpectralSet sigma;
};

void catalog(Check &c)
{
    using S = SpectralSet;
    const GaussRational one(1);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CatalogEntry> entries = {
        {"exp(1/2*x)", S::punctured_plane(), S::all_plane()},
        {"x+1", S::punctured_plane(), S::punctured_plane()},
        {"x^2+x+1", S::punctured_plane(), S::all_plane()},
        {"1/2*arctan(x)", S::powers(RealNumber(Rational(1, 2)), false), S::powers(RealNumber(Rational(1, 2)), true)},
        {"-x", S::finite({GaussRational(-1), one}), S::finite({GaussRational(-1), one})},
        {"x", S::finite({one}), S::finite({one})},
        {"1/2*x^3+1/2*x", S::finite({one}), S::punctured_plane()},
        {"x^2", S::finite({one}), S::all_plane()},
        {"x^3", S::finite({one}), S::all_plane()},
        {"-x^2+x", S::finite({one}), S::superset_of({S::finite({GaussRational(0)}), S::real_ray(1, true)})},
        {"-x^2+3/2*x", S::finite({one}), S::all_plane()},
        {"-x^2+2*x", S::finite({one}), S::all_plane()},
        {"-x^2+4*x", S::finite({one}),
         S::superset_of({S::closed_disk(1), S::powers(RealNumber(Rational(4)), false), S::powers(RealNumber(Rational(-2)), false)})},
    };
    for (const auto &e : entries) {
        const ClassificationReport r = classify(parse_symbol(e.symbol));
        c.require(to_json(r.sigma_p) == to_json(e.sigma_p), std::string("sigma_p of ") + e.symbol + " is " + r.sigma_p.to_string());
        c.require(to_json(r.sigma) == to_json(e.sigma), std::string("sigma of ") + e.symbol + " is " + r.sigma.to_string());
        c.require(r.resolved == e.sigma.resolved(), std::string("resolved flag of ") + e.symbol);
    }
    const double s = seconds_since(t0);
    c.require(s < catalog_seconds, "took " + std::to_string(s) + " s");
    c.why << (c.ok ? "13 symbols, " + std::to_string(s) + " s" : "");
}

// --- 2 ------------------------------------------------------------------

void divergence(Check &c)
{
    const auto t0 = std::chrono::steady_clock::now();
    const LocalSolution s = solve_formal(parse_symbol("-x^2+x"), RealValue(Rational(0)), 2, parse_function("x"), 40);
    c.require(s.series.exact(), "series not exact");
    const std::vector<Rational> f = s.series.real_rationals();
    const std::vector<Rational> head = {0, -1, 1, -2, 7, -34};
    c.require(std::equal(head.begin(), head.end(), f.begin()), "leading coefficients differ");
    for (std::size_t n = 1; n <= 40; ++n) {
        c.require((n % 2 ? -f[n] : f[n]) > 0, "sign pattern fails at n = " + std::to_string(n));
        if (n >= 2) {
            c.require(abs(f[n]) >= Rational(factorial(n - 1)), "factorial bound fails at n = " + std::to_string(n));
        }
    }
    c.require(s.radius.kind == RadiusVerdict::Kind::diverges, "verdict is " + to_string(s.radius.kind));
    const double t = seconds_since(t0);
    c.require(t < divergence_seconds, "took " + std::to_string(t) + " s");
    c.why << (c.ok ? "f_40 = " + to_string(f[40]).substr(0, 12) + "..., " + std::to_string(t) + " s" : "");
}

// --- 3 ------------------------------------------------------------------

std::vector<Rational> centered(const Polynomial &p, const Rational &u, std::size_t order)
{
    std::vector<Rational> out(order + 1);
    const Polynomial s = p.shift(u);
    for (std::size_t k = 0; k <= order; ++k) {
        out[k] = s.coeff(k);
    }
    return out;
}

void residual_suite(Check &c)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    const std::size_t order = 16;
    int solved = 0;
    while (solved < 100) {
        const Rational u = rnd(rng, 3, 2);
        Rational m = rnd(rng, 5, 4);
        if (m == 0) {
            m = Rational(1, 2);
        }
        const Polynomial phi = Polynomial({u, m, rnd(rng, 3, 2), rnd(rng, 2, 3)}).compose(Polynomial({-u, Rational(1)}));
        const Polynomial gamma({rnd(rng, 5, 3), rnd(rng, 5, 3), rnd(rng, 5, 3), rnd(rng, 2, 2)});
        const Rational lambda = rnd(rng, 6, 4);
        if (lambda == 0) {
            continue;
        }
        const auto ok = smajdor_condition(lambda, m, order);
        if (std::find(ok.begin(), ok.end(), false) != ok.end()) {
            continue;
        }
        const LocalSolution s =
            solve_formal(AnalyticSymbol::from_polynomial(phi), RealValue(u), lambda, expr::from_polynomial(gamma), order);
        // Independent path: compose against the shifted polynomial directly.
        const std::vector<Rational> f = s.series.real_rationals();
        std::vector<Rational> g = centered(phi, u, order);
        g[0] = 0;
        std::vector<Rational> r = ps::compose(f, g);
        const std::vector<Rational> gm = centered(gamma, u, order);
        for (std::size_t k = 0; k <= order; ++k) {
            c.require(r[k] - lambda * f[k] - gm[k] == 0, "nonzero residual in instance " + std::to_string(solved));
        }
        ++solved;
    }
    const AnalyticSymbol q = parse_symbol("-x^2+x");
    for (int t = 0; t < 20; ++t) {
        GaussRational lambda(rnd(rng, 9, 5), t % 4 == 0 ? rnd(rng, 3, 2) : Rational(0));
        if (lambda == GaussRational(1) || lambda.is_zero()) {
            lambda = GaussRational(Rational(t + 2, 3), 1);
        }
        const LocalSolution s = solve_formal(q, RealValue(Rational(0)), lambda, parse_function("x"), 20);
        c.require(s.series.exact_coeffs() == quadratic_id_recurrence(lambda, 20), "recurrence disagrees at " + to_string(lambda));
    }
    const double t = seconds_since(t0);
    c.require(t < residual_suite_seconds, "took " + std::to_string(t) + " s");
    c.why << (c.ok ? "100 instances + 20 lambdas, " + std::to_string(t) + " s" : "");
}

// --- 4 ------------------------------------------------------------------

std::vector<Rational> exact_jet(const AnalyticSymbol &phi, std::size_t order)
{
    const TruncatedSeries j = phi.jet(RealValue(Rational(0)), order, 256);
    if (!j.exact()) {
        throw InvalidParameter("jet is not exact");
    }
    return j.real_rationals();
}

void koenigs_check(Check &c)
{
    const TruncatedSeries k = koenigs(parse_symbol("1/2*x-x^2"), RealValue(Rational(0)), 8);
    c.require(k.exact() && k.real_rationals()[2] == -4, "c_2 != -4");

    const AnalyticSymbol phi = parse_symbol("1/2*arctan(x)");
    const std::size_t order = 20;
    std::vector<Rational> g = exact_jet(phi, order);
    g[0] = 0;
    const TruncatedSeries h = koenigs(phi, RealValue(Rational(0)), order);
    c.require(h.exact(), "Koenigs series for arctan not exact");
    if (h.exact()) {
        const std::vector<Rational> hs = h.real_rationals();
        const std::vector<Rational> lhs = ps::compose(hs, g);
        for (std::size_t i = 0; i <= order; ++i) {
            c.require(lhs[i] == Rational(1, 2) * hs[i], "Schroeder residual at order " + std::to_string(i));
        }
    }
    for (unsigned n = 0; n <= 3; ++n) {
        const Eigenfunction e = eigenfunction(phi, RealValue(Rational(0)), n, order);
        c.require(e.series.exact(), "eigenfunction not exact");
        const std::optional<Rational> m =
            e.eigenvalue.is_exact() ? std::optional<Rational>(e.eigenvalue.rational()) : std::nullopt;
        c.require(m && *m == rational_pow(Rational(1, 2), n), "eigenvalue of n = " + std::to_string(n));
        if (e.series.exact() && m) {
            const std::vector<Rational> es = e.series.real_rationals();
            const std::vector<Rational> lhs = ps::compose(es, g);
            for (std::size_t i = 0; i <= order; ++i) {
                c.require(lhs[i] == *m * es[i], "eigenfunction residual, n = " + std::to_string(n));
            }
        }
    }
    c.why << (c.ok ? "c_2 = -4, orders 0..20, n = 0..3" : "");
}

// --- 5 ------------------------------------------------------------------

void extension(Check &c)
{
    const GlobalSolution lin = GlobalSolution::build(parse_symbol("1/2*x"), RealValue(Rational(0)), 5, parse_function("1+x^2"));
    for (const long x : {-100L, -10L, 10L, 100L}) {
        const Evaluation e = evaluate(lin, RealValue(Rational(x)), extension_prec);
        const Rational want = Rational(-1, 4) - Rational(4, 19) * Rational(x * x);
        c.require(e.exact && *e.exact == GaussRational(want), "closed form fails at " + std::to_string(x));
    }

    const BigFloat tol = pow2(-extension_bits, extension_prec);
    const AnalyticSymbol at = parse_symbol("1/2*arctan(x)");
    const GlobalSolution arc = GlobalSolution::build(at, RealValue(Rational(0)), 2, parse_function("1"));
    BigFloat worst(0, extension_prec);
    for (const long x : {-10L, -7L, -5L, -3L, -1L, 1L, 3L, 5L, 7L, 10L}) {
        const BigFloat xf(Rational(x), extension_prec);
        const BigComplex fx = evaluate(arc, RealValue(xf), extension_prec).value;
        const BigComplex fp = evaluate(arc, RealValue(at.eval(xf)), extension_prec).value;
        const BigFloat r = abs(fp - BigComplex(BigFloat(2, extension_prec)) * fx - BigComplex(BigFloat(1, extension_prec)));
        worst = larger(worst, r);
    }
    c.require(worst < tol, "arctan residual " + worst.to_string(6));

    // f = x^2 solves the equation for -x^2 + x, lambda = 2 with this gamma.
    const GlobalSolution q =
        GlobalSolution::build(parse_symbol("-x^2+x"), RealValue(Rational(0)), 2, parse_function("x^4-2*x^3-x^2"));
    BigFloat cross(0, extension_prec);
    for (int k = 1; k < 20; ++k) {
        const Rational x(k, 20);
        const Evaluation fwd = extend_forward(q, RealValue(x), extension_prec);
        if (x < Rational(1, 4)) {
            cross = larger(cross, abs(fwd.value - extend_inverse_branch(q, RealValue(x), extension_prec).value));
        }
        if (x > Rational(1, 2)) {
            cross = larger(cross, abs(fwd.value - extend_mirror(q, RealValue(x), extension_prec).value));
        }
    }
    c.require(cross < tol, "cross-rule disagreement " + cross.to_string(6));
    c.why << (c.ok ? "arctan residual " + worst.to_string(3) + ", cross-rule " + cross.to_string(3) : "");
}

// --- 6 ------------------------------------------------------------------

void preimages(Check &c)
{
    const BigFloat ratio_tol = dec(orbit_ratio_tol, orbit_prec);
    const BigFloat fwd_tol = dec(orbit_forward_tol, orbit_prec);
    BigFloat worst(0, orbit_prec);
    for (const Rational mu : {Rational(5, 2), Rational(3), Rational(5)}) {
        const std::vector<BigFloat> x = preimage_orbit(mu, 40, orbit_prec);
        const BigFloat inv_mu = BigFloat(1, orbit_prec) / BigFloat(mu, orbit_prec);
        c.require(abs(x[39] / x[38] - inv_mu) < ratio_tol, "ratio off for mu = " + to_string(mu));
        const BigFloat m(mu, orbit_prec);
        BigFloat y = x[39];
        for (int i = 0; i < 40; ++i) {
            y = m * y - y * y;
        }
        const BigFloat err = abs(y - (m - BigFloat(1, orbit_prec)));
        worst = larger(worst, err);
        c.require(err < fwd_tol, "forward error " + err.to_string(6) + " for mu = " + to_string(mu));
    }
    c.why << (c.ok ? "worst forward error " + worst.to_string(3) : "");
}

// --- 7 ------------------------------------------------------------------

Json comparable(const ClassificationReport &r)
{
    Json j = to_json(r);
    j.erase("certified");
    j.erase("notes");
    return j;
}

void conjugation(Check &c)
{
    struct Pair {
        const char *phi;
        Diffeomorphism delta;
        bool heuristic;
    };
    const Diffeomorphism sh = Diffeomorphism::parse("exp(x)-exp(-x)");
    const std::vector<Pair> pairs = {
        {"-x^2+4*x", Diffeomorphism::affine(-1, 3), false},
        {"1/2*arctan(x)", Diffeomorphism::affine(3, 0), false},
        {"x+1", Diffeomorphism::affine(Rational(1, 2), 7), false},
        {"x^2", sh, true},
        {"x^3", sh, true},
    };
    for (const auto &p : pairs) {
        const AnalyticSymbol phi = parse_symbol(p.phi);
        const ClassificationReport a = classify(phi);
        const ClassificationReport b = classify(conjugate(phi, p.delta));
        if (p.heuristic) {
            c.require(comparable(a) == comparable(b), std::string("reports differ for ") + p.phi);
            c.require(!b.certified, std::string("transcendental conjugate of ") + p.phi + " not flagged");
        } else {
            c.require(to_json(a) == to_json(b), std::string("reports differ for ") + p.phi);
        }
    }
    // x^s conjugated by a transcendental diffeomorphism: sigma_p = {1}, sigma = C.
    for (const char *s : {"x^2", "x^3"}) {
        const ClassificationReport r = classify(conjugate(parse_symbol(s), sh));
        c.require(to_json(r.sigma_p) == to_json(SpectralSet::finite({GaussRational(1)})) &&
                      to_json(r.sigma) == to_json(SpectralSet::all_plane()),
                  std::string("sets for the conjugate of ") + s);
    }
    c.why << (c.ok ? "5 pairs, 2 heuristic" : "");
}

// --- 8 ------------------------------------------------------------------

void obstruction(Check &c)
{
    using V = CoveringObstruction::Verdict;
    const auto cube_pieces = parse_pieces("(-inf,0);(-1,1);(0,inf)");
    const AnalyticSymbol cube = parse_symbol("x^3");
    int n = 0;
    for (const GaussRational &l : {GaussRational(2), GaussRational(-1), GaussRational(Rational(1, 2)), GaussRational(0, 1)}) {
        c.require(covering_obstruction(cube, l, cube_pieces).verdict == V::not_surjective, "x^3 at " + to_string(l));
        ++n;
    }
    for (const char *mu : {"3/2", "2"}) {
        const Rational m = parse_rational(mu);
        const AnalyticSymbol phi = AnalyticSymbol::from_polynomial(Polynomial({Rational(0), m, Rational(-1)}));
        // U_1 = (-inf, mu - 1) u (1, inf), U_0 = (0, mu)
        const auto pieces =
            parse_pieces("(-inf," + to_string(m - 1) + ")|(1,inf);(0," + to_string(m) + ")");
        for (const GaussRational &l : {GaussRational(2), GaussRational(-1)}) {
            c.require(covering_obstruction(phi, l, pieces).verdict == V::not_surjective,
                      std::string("-x^2+") + mu + "x at " + to_string(l));
            ++n;
        }
    }
    c.require(covering_obstruction(cube, 2, parse_pieces("(-inf,inf)")).verdict == V::inconclusive, "single-piece control");
    c.why << (c.ok ? std::to_string(n) + " NotSurjective + 1 Inconclusive" : "");
}

// --- 9 ------------------------------------------------------------------

void witness(Check &c)
{
    const WitnessReport w = witness_demo(3, Rational(-1, 2), 8, Rational(1, 8), 40);
    c.require(w.margin.sign() > 0, "margin " + w.margin.to_string(10));
    c.why << "margin " << w.margin.to_string(10);
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<void(Check &)>>> criteria = {
        {"classification catalog", catalog},
        {"divergence certificate", divergence},
        {"formal solver residuals", residual_suite},
        {"Koenigs linearization", koenigs_check},
        {"global extension", extension},
        {"preimage orbit", preimages},
        {"conjugation invariance", conjugation},
        {"covering obstruction", obstruction},
        {"contradiction margin", witness},
    };
    int failed = 0;
    int id = 0;
    for (const auto &[name, run] : criteria) {
        ++id;
        Check c;
        try {
            run(c);
        } catch (const Error &e) {
            c.ok = false;
            c.why << e.name() << ": " << e.what();
        } catch (const std::exception &e) {
            c.ok = false;
            c.why << e.what();
        }
        failed += !c.ok;
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << c.why.str() << '\n';
    }
    return failed == 0 ? 0 : 1;
}
