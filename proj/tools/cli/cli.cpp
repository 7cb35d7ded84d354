#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <compspec/errors.hpp>
#include <compspec/json.hpp>

namespace compspec::cli
{

namespace
{

constexpr long default_precision = 256;

struct Options {
    std::string symbol;
    std::string interval = "(-inf,inf)";
    std::string lambda;
    std::string gamma;
    std::string at;
    std::string pieces;
    std::string point;
    std::string mu;
    std::string c = "1/8";
    std::string format = "text";
    std::string orientation = "resolvent";
    std::size_t order = 0;
    long precision = 0;
    unsigned k = 8;
    std::size_t n = 40;
};

// Thrown for bad flag values that the CLI itself detects.
struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int digits_for(mpfr_prec_t prec)
{
    return static_cast<int>(static_cast<double>(prec) * 0.30103) + 2;
}

std::string show(const BigFloat &x, int digits = 20)
{
    return x.to_string(digits);
}

std::string show(const BigComplex &z, int digits = 20)
{
    if (z.im.is_zero()) {
        return show(z.re, digits);
    }
    return show(z.re, digits) + (z.im.sign() < 0 ? " - " : " + ") + show(abs(z.im), digits) + "i";
}

std::string show_coeff(const TruncatedSeries &s, std::size_t k)
{
    if (s.exact()) {
        return to_string(s.exact_coeffs()[k]);
    }
    return show(s.float_coeffs()[k]);
}

mpfr_prec_t resolve_precision(long flag)
{
    long p = flag;
    if (p == 0) {
        p = default_precision;
        if (const char *env = std::getenv("COMPSPEC_PRECISION"); env && *env) {
            char *end = nullptr;
            p = std::strtol(env, &end, 10);
            if (*end != '\0') {
                throw Usage("COMPSPEC_PRECISION is not an integer: " + std::string(env));
            }
        }
    }
    if (p < 64 || p > 65536) {
        throw Usage("precision must lie in [64, 65536] bits");
    }
    return static_cast<mpfr_prec_t>(p);
}

// The equation is solved in the resolvent orientation; section1 input
// f - (1/lambda) f o phi = g becomes gamma = -lambda g.
Expr oriented_gamma(const Options &o, const GaussRational &lambda, std::vector<std::string> &notes)
{
    Expr g = parse_function(o.gamma);
    if (o.orientation == "resolvent") {
        return g;
    }
    if (!lambda.is_real()) {
        throw Usage("--orientation section1 needs a real lambda");
    }
    notes.push_back("orientation section1: gamma = -lambda * (" + to_string(g) + ")");
    return expr::mul(expr::constant(Rational(-lambda.re)), g);
}

RealValue point_value(const RealNumber &x, mpfr_prec_t prec)
{
    if (auto q = x.as_rational()) {
        return RealValue(*q);
    }
    return RealValue(x.to_bigfloat(prec + 64));
}

int kind_rank(FixedPointRecord::Kind k)
{
    switch (k) {
    case FixedPointRecord::Kind::attracting:
        return 0;
    case FixedPointRecord::Kind::superattracting:
        return 1;
    case FixedPointRecord::Kind::neutral:
        return 2;
    case FixedPointRecord::Kind::repelling:
        return 3;
    case FixedPointRecord::Kind::neutral_unresolved:
        return 4;
    }
    return 5;
}

// Attracting points first, exact locations before enclosures.
std::vector<RealValue> fixed_point_candidates(const AnalyticSymbol &phi, const Options &o, mpfr_prec_t prec)
{
    if (!o.point.empty()) {
        return {RealValue(parse_rational(o.point))};
    }
    FixedPointSet set = find_fixed_points(phi);
    if (set.all_fixed) {
        throw Usage("every point of J is fixed; choose one with --point");
    }
    if (set.points.empty()) {
        throw NoConvergentLocalSolution("phi has no fixed point in J");
    }
    std::stable_sort(set.points.begin(), set.points.end(), [](const auto &a, const auto &b) {
        const int ra = kind_rank(a.kind) * 2 + (a.location.as_rational() ? 0 : 1);
        const int rb = kind_rank(b.kind) * 2 + (b.location.as_rational() ? 0 : 1);
        return ra < rb;
    });
    std::vector<RealValue> out;
    for (const auto &p : set.points) {
        out.push_back(point_value(p.location, prec));
    }
    return out;
}

void print_lines(std::ostream &out, const char *title, const std::vector<std::string> &lines)
{
    if (lines.empty()) {
        return;
    }
    out << title << ":\n";
    for (const auto &l : lines) {
        out << "  - " << l << "\n";
    }
}

void print_series(std::ostream &out, const TruncatedSeries &s, const char *name)
{
    out << "center: " << s.center().to_string() << "\n";
    out << "order: " << s.order() << (s.exact() ? " (exact)" : " (float)") << "\n";
    out << "coefficients:\n";
    for (std::size_t k = 0; k <= s.order(); ++k) {
        out << "  " << name << "_" << k << " = " << show_coeff(s, k) << "\n";
    }
}

void print_radius(std::ostream &out, const RadiusVerdict &v)
{
    out << "verdict: " << to_string(v.kind) << "\n";
    if (v.infinite) {
        out << "radius: infinite\n";
    } else if (v.r_est) {
        out << "radius estimate: " << *v.r_est << "\n";
    }
    out << "reason: " << v.reason << "\n";
}

// Commands -------------------------------------------------------------

void cmd_classify(const Options &o, std::ostream &out)
{
    const AnalyticSymbol phi = parse_symbol(o.symbol, parse_interval(o.interval));
    const ClassificationReport r = classify(phi);
    if (o.format == "json") {
        out << to_json(r).dump(2) << "\n";
        return;
    }
    out << "symbol: " << phi.text() << " on " << phi.domain().to_string() << "\n";
    out << "case: " << r.case_id << "\n";
    out << "sigma: " << r.sigma.to_string() << "\n";
    out << "sigma_p: " << r.sigma_p.to_string() << "\n";
    out << "eigenspace dimensions:\n";
    for (const auto &rule : r.eigen.rules) {
        out << "  " << (rule.on ? "on " + rule.on->to_string() : std::string("otherwise")) << ": " << rule.dim.to_string()
            << "\n";
    }
    out << "resolved: " << (r.resolved ? "yes" : "no") << "\n";
    if (r.open_problem) {
        out << "open problem: " << *r.open_problem << "\n";
    }
    out << "certified: " << (r.certified ? "yes" : "no") << "\n";
    out << "citations:";
    for (const auto &c : r.citations) {
        out << " [" << c << "]";
    }
    out << "\n";
    print_lines(out, "notes", r.notes);
}

void cmd_solve(const Options &o, mpfr_prec_t prec, std::ostream &out)
{
    const AnalyticSymbol phi = parse_symbol(o.symbol, parse_interval(o.interval));
    const GaussRational lambda = parse_gauss(o.lambda);
    std::vector<std::string> notes;
    const Expr gamma = oriented_gamma(o, lambda, notes);
    const RealValue u = fixed_point_candidates(phi, o, prec).front();
    const LocalSolution s = solve_formal(phi, u, lambda, gamma, o.order ? o.order : 30, prec);
    if (o.format == "json") {
        Json j = to_json(s);
        j["orientation"] = o.orientation;
        j["notes"] = notes;
        out << j.dump(2) << "\n";
        return;
    }
    out << "symbol: " << phi.text() << "\n";
    out << "fixed point: " << u.to_string() << "\n";
    out << "multiplier: " << s.multiplier.to_string() << "\n";
    out << "lambda: " << to_string(s.lambda) << "\n";
    out << "gamma: " << s.gamma << "\n";
    print_series(out, s.series, "f");
    print_radius(out, s.radius);
    print_lines(out, "notes", notes);
}

void cmd_eval(const Options &o, mpfr_prec_t prec, std::ostream &out)
{
    const AnalyticSymbol phi = parse_symbol(o.symbol, parse_interval(o.interval));
    const GaussRational lambda = parse_gauss(o.lambda);
    std::vector<std::string> notes;
    const Expr gamma = oriented_gamma(o, lambda, notes);
    const RealValue x(parse_rational(o.at));
    GlobalOptions go;
    go.precision = prec;
    if (o.order) {
        go.order = o.order;
    }

    std::optional<Evaluation> result;
    std::optional<GlobalSolution> used;
    std::exception_ptr first_failure;
    for (const auto &u : fixed_point_candidates(phi, o, prec)) {
        try {
            GlobalSolution sol = GlobalSolution::build(phi, u, lambda, gamma, go);
            result = evaluate(sol, x, prec);
            used = std::move(sol);
            break;
        } catch (const Error &e) {
            if (!e.mathematical()) {
                throw;
            }
            if (!first_failure) {
                first_failure = std::current_exception();
            }
        }
    }
    if (!result) {
        std::rethrow_exception(first_failure);
    }
    for (const auto &n : used->notes()) {
        notes.push_back(n);
    }

    if (o.format == "json") {
        Json j = to_json(*result);
        j["at"] = to_json(x.rational());
        j["fixed_point"] = to_json(used->fixed_point());
        j["mode"] = used->exact() ? "exact" : "float";
        j["orientation"] = o.orientation;
        j["notes"] = notes;
        out << j.dump(2) << "\n";
        return;
    }
    out << "symbol: " << phi.text() << "\n";
    out << "fixed point: " << used->fixed_point().to_string() << "\n";
    out << "mode: " << (used->exact() ? "exact" : "float") << "\n";
    out << "f(" << to_string(x.rational()) << ") = ";
    if (result->exact) {
        out << to_string(*result->exact) << "\n";
    } else {
        out << show(result->value, digits_for(result->precision)) << "\n";
    }
    out << "depth: " << result->depth << "\n";
    out << "chain:\n";
    for (const auto &step : result->chain) {
        out << "  " << step << "\n";
    }
    out << "residual: " << show(result->residual, 6) << "\n";
    out << "error bound: " << show(result->error_bound, 6) << "\n";
    out << "precision: " << result->precision << "\n";
    print_lines(out, "notes", notes);
}

void cmd_koenigs(const Options &o, mpfr_prec_t prec, std::ostream &out)
{
    const AnalyticSymbol phi = parse_symbol(o.symbol, parse_interval(o.interval));
    const std::size_t order = o.order ? o.order : 20;
    std::optional<RealValue> u;
    if (!o.point.empty()) {
        u = RealValue(parse_rational(o.point));
    } else {
        for (const auto &p : find_fixed_points(phi).points) {
            if (p.kind == FixedPointRecord::Kind::attracting) {
                u = point_value(p.location, prec);
                break;
            }
        }
        if (!u) {
            throw NeutralOrSuperattracting("phi has no attracting fixed point with nonzero multiplier");
        }
    }
    const TruncatedSeries s = koenigs(phi, *u, order, prec);
    const RealValue m = phi.derivative(*u, prec);
    std::optional<RadiusVerdict> radius;
    if (order >= 16) {
        radius = estimate_radius(s);
    }
    if (o.format == "json") {
        Json j = to_json(s);
        j["multiplier"] = to_json(m);
        j["radius"] = radius ? to_json(*radius) : Json();
        out << j.dump(2) << "\n";
        return;
    }
    out << "symbol: " << phi.text() << "\n";
    out << "multiplier: " << m.to_string() << "\n";
    print_series(out, s, "c");
    if (radius) {
        print_radius(out, *radius);
    }
}

void cmd_orbit(const Options &o, mpfr_prec_t prec, std::ostream &out)
{
    const Rational mu = parse_rational(o.mu);
    const std::vector<BigFloat> xs = preimage_orbit(mu, o.n, prec);
    // phi^[n-1](x_n) should land on x_1 = 1, so phi^[n](x_n) on mu - 1.
    const AnalyticSymbol phi = parse_symbol("-x^2+" + to_string(mu) + "*x");
    BigFloat y = xs.back();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        y = phi.eval(y);
    }
    const BigFloat forward_error = abs(y - BigFloat(Rational(mu - 1), prec));
    const int digits = digits_for(prec);

    if (o.format == "json") {
        Json rows = Json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            rows.push_back({{"n", i + 1},
                            {"x", to_json(xs[i])},
                            {"ratio", i == 0 ? Json() : to_json(BigFloat(xs[i] / xs[i - 1]))}});
        }
        out << Json{{"version", json_version},
                    {"mu", to_json(mu)},
                    {"n", o.n},
                    {"precision", prec},
                    {"rows", rows},
                    {"forward_error", to_json(forward_error)}}
                   .dump(2)
            << "\n";
        return;
    }
    out << "phi = -x^2 + " << to_string(mu) << "*x, precision " << prec << "\n";
    out << "n  x_n  x_n/x_(n-1)\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << i + 1 << "  " << show(xs[i], std::min(digits, 30)) << "  "
            << (i == 0 ? std::string("-") : show(BigFloat(xs[i] / xs[i - 1]), 12)) << "\n";
    }
    out << "1/mu = " << to_string(Rational(1 / mu)) << "\n";
    out << "|phi^[n](x_n) - (mu - 1)| = " << show(forward_error, 6) << "\n";
}

void cmd_obstruct(const Options &o, std::ostream &out)
{
    const AnalyticSymbol phi = parse_symbol(o.symbol, parse_interval(o.interval));
    const CoveringObstruction c = covering_obstruction(phi, parse_gauss(o.lambda), parse_pieces(o.pieces));
    if (o.format == "json") {
        out << to_json(c).dump(2) << "\n";
        return;
    }
    auto piece_text = [](const IntervalUnion &u) { return u.to_string(); };
    out << "symbol: " << phi.text() << "\n";
    out << "lambda: " << to_string(c.lambda) << "\n";
    out << "pieces:\n";
    for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        out << "  U" << i + 1 << " = " << piece_text(c.pieces[i]) << "  kernel " << c.piece_kernels[i].to_string()
            << "\n";
    }
    if (!c.intersections.empty()) {
        out << "intersections:\n";
    }
    for (const auto &x : c.intersections) {
        out << "  U" << x.first + 1 << " n U" << x.second + 1 << " = " << piece_text(x.set) << "  kernel "
            << x.kernel.to_string() << "\n";
    }
    out << "verdict: " << to_string(c.verdict) << "\n";
    out << "certified: " << (c.certified ? "yes" : "no") << "\n";
    print_lines(out, "notes", c.notes);
}

void cmd_demo45(const Options &o, mpfr_prec_t prec, std::ostream &out)
{
    const WitnessReport w =
        witness_demo(parse_rational(o.mu.empty() ? "3" : o.mu), parse_gauss(o.lambda.empty() ? "-1/2" : o.lambda), o.k,
                     parse_rational(o.c), o.n, prec);
    if (o.format == "json") {
        out << to_json(w).dump(2) << "\n";
        return;
    }
    out << "mu: " << to_string(w.mu) << "\n";
    out << "lambda: " << to_string(w.lambda) << "\n";
    out << "gamma: " << w.gamma << "\n";
    out << "|gamma_0| on [0,1]: [" << to_string(w.gamma0_range.first) << ", " << to_string(w.gamma0_range.second)
        << "]\n";
    out << "orbit terms: " << w.orbit.size() << "\n";
    out << "gamma(mu-1)/(1-lambda) = " << show(w.lhs) << "\n";
    out << "gamma(1) = " << show(w.gamma_at_1) << "\n";
    out << "tail = " << show(w.tail) << "\n";
    out << "6c = " << show(w.bound) << "\n";
    out << "margin = " << show(w.margin) << "\n";
    print_lines(out, "notes", w.notes);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Spectra of composition operators and the resolvent equation f(phi(x)) - lambda f(x) = gamma(x)",
                 "compspec"};
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--precision", o.precision, "Working precision in bits (default $COMPSPEC_PRECISION or 256)");

    auto symbol_flags = [&](CLI::App *sub) {
        sub->add_option("--symbol", o.symbol, "phi as an expression in x")->required();
        sub->add_option("--interval", o.interval, "Domain J, e.g. \"(0,inf)\"")->capture_default_str();
    };
    auto equation_flags = [&](CLI::App *sub) {
        sub->add_option("--lambda", o.lambda, "Gaussian rational \"a/b+c/di\" or decimal")->required();
        sub->add_option("--gamma", o.gamma, "Right-hand side gamma(x)")->required();
        sub->add_option("--orientation", o.orientation, "resolvent: f(phi) - lambda f = gamma; section1: f - f(phi)/lambda = gamma")
            ->check(CLI::IsMember({"resolvent", "section1"}))
            ->capture_default_str();
        sub->add_option("--point", o.point, "Fixed point to expand at (default: chosen automatically)");
    };

    CLI::App *classify_cmd = app.add_subcommand("classify", "Spectrum and point spectrum of C_phi");
    symbol_flags(classify_cmd);

    CLI::App *solve_cmd = app.add_subcommand("solve", "Formal power series solution at a fixed point");
    symbol_flags(solve_cmd);
    equation_flags(solve_cmd);
    solve_cmd->add_option("--order", o.order, "Truncation order (default 30)");

    CLI::App *eval_cmd = app.add_subcommand("eval", "Evaluate the global solution at a point");
    symbol_flags(eval_cmd);
    equation_flags(eval_cmd);
    eval_cmd->add_option("--at", o.at, "Rational evaluation point")->required();
    eval_cmd->add_option("--order", o.order, "Local series order (default 64)");

    CLI::App *koenigs_cmd = app.add_subcommand("koenigs", "Koenigs linearizing series at an attracting fixed point");
    symbol_flags(koenigs_cmd);
    koenigs_cmd->add_option("--order", o.order, "Truncation order (default 20)");
    koenigs_cmd->add_option("--point", o.point, "Fixed point (default: the attracting one)");

    CLI::App *orbit_cmd = app.add_subcommand("orbit", "Backward orbit of 1 under -x^2 + mu x toward 0");
    orbit_cmd->add_option("--mu", o.mu, "mu > 2")->required();
    orbit_cmd->add_option("--n", o.n, "Number of orbit points")->capture_default_str();

    CLI::App *obstruct_cmd = app.add_subcommand("obstruct", "Non-surjectivity from a covering by invariant pieces");
    symbol_flags(obstruct_cmd);
    obstruct_cmd->add_option("--lambda", o.lambda, "Gaussian rational or decimal")->required();
    obstruct_cmd->add_option("--pieces", o.pieces, "\"(a,b)|(c,d);(e,f)\": pieces by ';', components by '|'")
        ->required();

    CLI::App *demo_cmd = app.add_subcommand("demo45", "Contradiction margin for -x^2 + mu x with a power-type gamma");
    demo_cmd->add_option("--mu", o.mu, "mu > 2 (default 3)");
    demo_cmd->add_option("--lambda", o.lambda, "0 < |lambda| <= 1, lambda != 1 (default -1/2)");
    demo_cmd->add_option("--k", o.k, "Power of x in gamma")->capture_default_str();
    demo_cmd->add_option("--c", o.c, "Tail constant in (0, 1/6)")->capture_default_str();
    demo_cmd->add_option("--n", o.n, "Orbit terms summed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        const mpfr_prec_t prec = resolve_precision(o.precision);
        if (classify_cmd->parsed()) {
            cmd_classify(o, out);
        } else if (solve_cmd->parsed()) {
            cmd_solve(o, prec, out);
        } else if (eval_cmd->parsed()) {
            cmd_eval(o, prec, out);
        } else if (koenigs_cmd->parsed()) {
            cmd_koenigs(o, prec, out);
        } else if (orbit_cmd->parsed()) {
            cmd_orbit(o, prec, out);
        } else if (obstruct_cmd->parsed()) {
            cmd_obstruct(o, out);
        } else if (demo_cmd->parsed()) {
            cmd_demo45(o, prec, out);
        }
    } catch (const Usage &e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const Error &e) {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        if (o.format == "json") {
            out << Json{{"version", json_version}, {"error", e.name()}, {"message", e.what()}}.dump(2) << "\n";
        }
        return e.mathematical() ? math_error : usage_error;
    }
    return ok;
}

} // namespace compspec::cli
