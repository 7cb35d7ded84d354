#include <compspec/continuation.hpp>

#include <algorithm>
#include <cmath>

#include <compspec/errors.hpp>
#include <compspec/rootwork.hpp>

namespace compspec
{

std::string to_string(ExtensionRule::Kind k)
{
    switch (k) {
    case ExtensionRule::Kind::forward_orbit:
        return "forward_orbit";
    case ExtensionRule::Kind::inverse_branch:
        return "inverse_branch";
    default:
        return "mirror";
    }
}

namespace
{

constexpr mpfr_prec_t max_precision = 4096;
// Exact orbits switch to floats once a rational grows past this many bits.
constexpr std::size_t max_exact_bits = 4096;

BigFloat tolerance(mpfr_prec_t prec)
{
    return pow2(-(static_cast<long>(prec) - 32), 64);
}

// A point kept exactly while possible.
struct Pt {
    std::optional<Rational> q;
    BigFloat x;
};

Pt make_pt(const RealValue &v, mpfr_prec_t w)
{
    if (v.is_exact()) {
        return {v.rational(), BigFloat(v.rational(), w)};
    }
    return {std::nullopt, v.approx().rounded(w)};
}

Pt make_pt(const Rational &q, mpfr_prec_t w)
{
    return {q, BigFloat(q, w)};
}

std::string show(const Pt &p)
{
    return p.q ? to_string(*p.q) : p.x.to_string(20);
}

// A value kept exactly while possible.
struct Val {
    std::optional<GaussRational> q;
    BigComplex z;
};

Val make_val(const GaussRational &q, mpfr_prec_t w)
{
    return {q, BigComplex(q, w)};
}

Val make_val(BigComplex z)
{
    return {std::nullopt, std::move(z)};
}

Val operator+(const Val &a, const Val &b)
{
    Val r{std::nullopt, a.z + b.z};
    if (a.q && b.q) {
        r.q = *a.q + *b.q;
    }
    return r;
}

Val operator-(const Val &a, const Val &b)
{
    Val r{std::nullopt, a.z - b.z};
    if (a.q && b.q) {
        r.q = *a.q - *b.q;
    }
    return r;
}

Val operator*(const Val &a, const Val &b)
{
    Val r{std::nullopt, a.z * b.z};
    if (a.q && b.q) {
        r.q = *a.q * *b.q;
    }
    return r;
}

Val operator/(const Val &a, const Val &b)
{
    Val r{std::nullopt, a.z / b.z};
    if (a.q && b.q) {
        r.q = *a.q / *b.q;
    }
    return r;
}

BigFloat magnitude(const Val &v)
{
    if (v.q) {
        return sqrt(BigFloat(v.q->norm(), v.z.precision()));
    }
    return abs(v.z);
}

std::size_t bits(const Rational &q)
{
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

class Context
{
public:
    Context(const GlobalSolution &sol, mpfr_prec_t w)
        : sol_(sol), w_(w), lambda_(make_val(sol.lambda(), w)), u_(make_pt(sol.fixed_point(), w))
    {
    }

    mpfr_prec_t w() const { return w_; }
    const Val &lambda() const { return lambda_; }

    Val gamma(const Pt &p) const
    {
        if (p.q) {
            if (auto v = eval_exact(sol_.gamma(), *p.q)) {
                return make_val(GaussRational(*v), w_);
            }
        }
        return make_val(BigComplex(compspec::eval(sol_.gamma(), p.x), BigFloat(0, w_)));
    }

    Val series(const Pt &p) const
    {
        const TruncatedSeries &s = sol_.local().series;
        if (p.q && sol_.exact() && u_.q) {
            return make_val(s.eval_exact(*p.q - *u_.q), w_);
        }
        BigFloat t = p.x - u_.x;
        return make_val(s.eval(t));
    }

    Pt phi(const Pt &p) const
    {
        const AnalyticSymbol &phi = sol_.phi();
        if (p.q && phi.is_polynomial() && bits(*p.q) <= max_exact_bits) {
            return make_pt(phi.polynomial()(*p.q), w_);
        }
        return {std::nullopt, phi.eval(p.x)};
    }

    bool in(const Interval &i, const Pt &p) const { return p.q ? i.contains(*p.q) : i.contains(p.x); }

    // |S(phi(y)) - lambda S(y) - gamma(y)| where the series covers phi(y).
    std::optional<BigFloat> series_residual(const Pt &y) const
    {
        const Pt py = phi(y);
        if (!in(sol_.series_region(), py)) {
            return std::nullopt;
        }
        return magnitude(series(py) - lambda_ * series(y) - gamma(y));
    }

private:
    const GlobalSolution &sol_;
    mpfr_prec_t w_;
    Val lambda_;
    Pt u_;
};

Evaluation finish(const Val &value, unsigned long depth, std::vector<std::string> chain, BigFloat residual, BigFloat amplification,
                  mpfr_prec_t w)
{
    Evaluation e;
    e.value = value.z;
    e.exact = value.q;
    e.depth = depth;
    e.chain = std::move(chain);
    e.precision = w;
    if (value.q && residual.is_zero()) {
        e.residual = BigFloat(0, w);
        e.error_bound = BigFloat(0, w);
        return e;
    }
    const BigFloat one(1, w);
    const BigFloat scale = abs(value.z) > one ? abs(value.z) : one;
    const BigFloat rounding = ldexp(scale, -static_cast<long>(w) + 8) * BigFloat(static_cast<long>(depth + 1), w);
    e.error_bound = (residual + rounding) * amplification;
    e.residual = std::move(residual);
    return e;
}

// Retries at doubled working precision until the error bound meets the
// tolerance of the requested precision.
template <class F>
Evaluation escalate(mpfr_prec_t prec, F attempt)
{
    const BigFloat tol = tolerance(prec);
    Evaluation last;
    for (mpfr_prec_t w = prec; w <= max_precision; w *= 2) {
        last = attempt(w);
        if (last.exact || last.error_bound < tol) {
            return last;
        }
    }
    throw PrecisionLoss("error bound " + last.error_bound.to_string(6) + " above 2^-" + std::to_string(prec - 32) + " at " +
                        std::to_string(max_precision) + " bits");
}

const ExtensionRule *find_rule(const GlobalSolution &sol, ExtensionRule::Kind kind)
{
    for (const auto &r : sol.rules()) {
        if (r.kind == kind) {
            return &r;
        }
    }
    return nullptr;
}

Evaluation forward_once(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t w)
{
    const Context ctx(sol, w);
    const ExtensionRule *rule = find_rule(sol, ExtensionRule::Kind::forward_orbit);
    const unsigned long max_depth = rule ? rule->max_depth : 10000;
    std::vector<Pt> orbit{make_pt(x, w)};
    if (!ctx.in(sol.phi().domain(), orbit[0])) {
        throw DomainError(show(orbit[0]) + " lies outside " + sol.phi().domain().to_string());
    }
    while (!ctx.in(sol.core(), orbit.back())) {
        const long depth = static_cast<long>(orbit.size()) - 1;
        if (orbit.size() > max_depth) {
            throw BasinEscape(depth, "orbit of " + show(orbit[0]) + " did not enter the core within " + std::to_string(max_depth) + " steps");
        }
        Pt next = ctx.phi(orbit.back());
        if (!next.q && !next.x.is_finite()) {
            throw BasinEscape(depth + 1, "orbit of " + show(orbit[0]) + " diverges");
        }
        if (!ctx.in(sol.phi().domain(), next)) {
            throw BasinEscape(depth + 1, "orbit of " + show(orbit[0]) + " left the domain");
        }
        orbit.push_back(std::move(next));
    }
    const unsigned long n = orbit.size() - 1;
    std::vector<Val> f(orbit.size());
    f[n] = ctx.series(orbit[n]);
    std::vector<std::string> chain{"series at " + show(orbit[n])};
    for (unsigned long k = n; k-- > 0;) {
        f[k] = (f[k + 1] - ctx.gamma(orbit[k])) / ctx.lambda();
    }
    if (n > 0) {
        chain.push_back("forward_orbit depth " + std::to_string(n));
    }
    BigFloat residual(0, w);
    if (auto s = ctx.series_residual(orbit[n])) {
        residual = *s;
    }
    if (n > 0) {
        const Val r = f[1] - ctx.lambda() * f[0] - ctx.gamma(orbit[0]);
        const BigFloat m = magnitude(r);
        if (m > residual) {
            residual = m;
        }
    }
    // Unwinding divides by lambda once per step.
    const BigFloat inv = BigFloat(1, w) / abs(ctx.lambda().z);
    const BigFloat amp = pow(inv > BigFloat(1, w) ? inv : BigFloat(1, w), n);
    return finish(f[0], n, std::move(chain), residual, amp, w);
}

struct Branch {
    Polynomial p;
    Interval region;
    ExtRational image_lo;
    ExtRational image_hi;
    int orientation;
};

Branch branch_of(const GlobalSolution &sol)
{
    const ExtensionRule *rule = find_rule(sol, ExtensionRule::Kind::inverse_branch);
    if (!rule) {
        throw BranchDomain("no inverse branch rule for " + sol.phi().text());
    }
    Branch b{sol.phi().polynomial(), rule->region, {}, {}, 0};
    b.orientation = b.p.derivative()(rule->region.interior_point()) > 0 ? 1 : -1;
    ExtRational a = b.p.limit(rule->region.lower());
    ExtRational c = b.p.limit(rule->region.upper());
    if (b.orientation < 0) {
        std::swap(a, c);
    }
    b.image_lo = a;
    b.image_hi = c;
    return b;
}

bool in_image(const Branch &b, const Pt &y)
{
    auto above = [&](const ExtRational &lo) {
        if (!lo.is_finite()) {
            return lo.kind() == ExtRational::Kind::neg_inf;
        }
        return y.q ? *y.q >= lo.value() : y.x >= BigFloat(lo.value(), y.x.precision());
    };
    auto below = [&](const ExtRational &hi) {
        if (!hi.is_finite()) {
            return hi.kind() == ExtRational::Kind::pos_inf;
        }
        return y.q ? *y.q <= hi.value() : y.x <= BigFloat(hi.value(), y.x.precision());
    };
    return above(b.image_lo) && below(b.image_hi);
}

// Solves p(t) = y on the closure of the branch region by bisection; snaps to
// a rational root when one is within reach.
Pt psi(const Branch &b, const Pt &y, mpfr_prec_t w)
{
    const mpfr_prec_t wp = w + 16;
    const BigFloat target = y.q ? BigFloat(*y.q, wp) : y.x.rounded(wp);
    auto g = [&](const BigFloat &t) { return (b.p(t) - target) * BigFloat(b.orientation, wp); };
    const Rational mid = b.region.interior_point();
    BigFloat lo = b.region.lower().is_finite() ? BigFloat(b.region.lower().value(), wp) : BigFloat(mid, wp);
    BigFloat hi = b.region.upper().is_finite() ? BigFloat(b.region.upper().value(), wp) : BigFloat(mid, wp);
    BigFloat step(1, wp);
    for (int i = 0; g(lo).sign() > 0; ++i) {
        if (b.region.lower().is_finite() || i > 4096) {
            throw BranchDomain(show(y) + " is not in the image of the branch");
        }
        lo = lo - step;
        step = step * BigFloat(2, wp);
    }
    step = BigFloat(1, wp);
    for (int i = 0; g(hi).sign() < 0; ++i) {
        if (b.region.upper().is_finite() || i > 4096) {
            throw BranchDomain(show(y) + " is not in the image of the branch");
        }
        hi = hi + step;
        step = step * BigFloat(2, wp);
    }
    for (long i = 0; i < 4 * wp; ++i) {
        const BigFloat m = ldexp(lo + hi, -1);
        if (m == lo || m == hi) {
            break;
        }
        (g(m).sign() > 0 ? hi : lo) = m;
    }
    const BigFloat t = ldexp(lo + hi, -1);
    if (y.q) {
        const Rational eps(Integer(1), Integer(1) << static_cast<unsigned long>(w / 2));
        const Rational tq = t.to_rational();
        const Rational r = simplest_between(tq - eps, tq + eps);
        if (b.p(r) == *y.q) {
            return make_pt(r, w);
        }
    }
    return {std::nullopt, t.rounded(w)};
}

Evaluation inverse_once(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t w)
{
    const Context ctx(sol, w);
    const Branch b = branch_of(sol);
    const ExtensionRule *rule = find_rule(sol, ExtensionRule::Kind::inverse_branch);
    std::vector<Pt> orbit{make_pt(x, w)};
    if (!in_image(b, orbit[0])) {
        throw BranchDomain(show(orbit[0]) + " is outside the branch image of " + b.region.to_string());
    }
    while (!ctx.in(sol.series_region(), orbit.back())) {
        const long depth = static_cast<long>(orbit.size()) - 1;
        if (orbit.size() > rule->max_depth || !in_image(b, orbit.back())) {
            throw BasinEscape(depth, "inverse orbit of " + show(orbit[0]) + " does not reach the series region");
        }
        orbit.push_back(psi(b, orbit.back(), w));
    }
    const unsigned long n = orbit.size() - 1;
    std::vector<Val> f(orbit.size());
    f[n] = ctx.series(orbit[n]);
    for (unsigned long k = n; k-- > 0;) {
        f[k] = ctx.lambda() * f[k + 1] + ctx.gamma(orbit[k + 1]);
    }
    std::vector<std::string> chain{"series at " + show(orbit[n])};
    if (n > 0) {
        chain.push_back("inverse_branch depth " + std::to_string(n));
    }
    BigFloat residual(0, w);
    if (auto s = ctx.series_residual(orbit[n])) {
        residual = *s;
    }
    if (n > 0) {
        // Equation at psi(x): f(x) - lambda f(psi(x)) - gamma(psi(x)), with
        // phi(psi(x)) = x up to the bisection error.
        const Val r = f[0] - ctx.lambda() * f[1] - ctx.gamma(orbit[1]);
        const BigFloat m = magnitude(r) + abs(ctx.phi(orbit[1]).x - orbit[0].x);
        if (m > residual) {
            residual = m;
        }
    }
    const BigFloat l = abs(ctx.lambda().z);
    const BigFloat amp = pow(l > BigFloat(1, w) ? l : BigFloat(1, w), n);
    return finish(f[0], n, std::move(chain), residual, amp, w);
}

Evaluation mirror_once(const GlobalSolution &sol, const RealValue &y, mpfr_prec_t w)
{
    const ExtensionRule *rule = find_rule(sol, ExtensionRule::Kind::mirror);
    if (!rule) {
        throw ReflectedUncovered("no mirror rule for " + sol.phi().text());
    }
    const Context ctx(sol, w);
    const Pt py = make_pt(y, w);
    const Rational two_a = 2 * *rule->axis;
    const Pt pz = py.q ? make_pt(two_a - *py.q, w) : Pt{std::nullopt, BigFloat(two_a, w) - py.x};
    const RealValue z = pz.q ? RealValue(*pz.q) : RealValue(pz.x);
    Evaluation base;
    try {
        base = forward_once(sol, z, w);
    } catch (const Error &) {
        try {
            base = inverse_once(sol, z, w);
        } catch (const Error &e) {
            throw ReflectedUncovered("reflected point " + show(pz) + " is not covered: " + e.what());
        }
    }
    const Val fz = base.exact ? make_val(*base.exact, w) : make_val(base.value);
    const Val fy = fz + (ctx.gamma(pz) - ctx.gamma(py)) / ctx.lambda();
    std::vector<std::string> chain = base.chain;
    chain.push_back("mirror about " + to_string(*rule->axis));
    Evaluation e = finish(fy, base.depth, std::move(chain), base.residual, BigFloat(1, w), w);
    if (!fy.q) {
        e.error_bound = e.error_bound + base.error_bound;
    }
    return e;
}

bool sign_ok_abs_below_one(const RealValue &m, mpfr_prec_t prec)
{
    if (m.is_exact()) {
        return abs(m.rational()) < 1;
    }
    return abs(m.approx()) < BigFloat(1, prec) - pow2(-static_cast<long>(prec) / 2, prec);
}

bool abs_at_least_one(const RealValue &m)
{
    if (m.is_exact()) {
        return abs(m.rational()) >= 1;
    }
    return abs(m.approx()) >= BigFloat(1, m.approx().precision());
}

// The polynomial sum c_k (x - u)^k split into real and imaginary parts.
std::pair<Polynomial, Polynomial> series_polynomials(const TruncatedSeries &s, const Rational &u)
{
    std::vector<Rational> re;
    std::vector<Rational> im;
    for (const auto &c : s.exact_coeffs()) {
        re.push_back(c.re);
        im.push_back(c.im);
    }
    return {Polynomial(re).shift(-u), Polynomial(im).shift(-u)};
}

bool identically_zero(const Expr &e)
{
    const auto p = as_polynomial(e);
    return p && p->is_zero();
}

// The truncated series solves the equation identically.
bool exact_solution(const AnalyticSymbol &phi, const TruncatedSeries &s, const Rational &u, const GaussRational &lambda,
                    const Expr &gamma)
{
    std::size_t last = 0;
    for (std::size_t k = 0; k <= s.order(); ++k) {
        if (!s.exact_coeffs()[k].is_zero()) {
            last = k;
        }
    }
    if (2 * last > s.order()) {
        return false;
    }
    const auto [a, b] = series_polynomials(s, u);
    auto compose = [&](const Polynomial &p) { return expr::substitute(expr::from_polynomial(p), phi.expr()); };
    const Expr re = expr::sub(expr::sub(compose(a), expr::from_polynomial(lambda.re * a - lambda.im * b)), gamma);
    const Expr im = expr::sub(compose(b), expr::from_polynomial(lambda.re * b + lambda.im * a));
    return identically_zero(re) && identically_zero(im);
}

std::optional<Interval> clip(const Interval &i, const Interval &domain)
{
    return i.intersect(domain);
}

// Invariant neighbourhood of u of radius at most r: two-sided, then each
// one-sided half, halving r. Returns the interval and whether invariance is
// certified.
std::optional<std::pair<Interval, bool>> invariant_core(const AnalyticSymbol &phi, const Rational &u, Rational r, int halvings)
{
    for (int i = 0; i <= halvings; ++i, r /= 2) {
        const Rational lo = u - r;
        const Rational hi = u + r;
        const Interval candidates[] = {Interval(lo, hi), Interval(u, hi), Interval(lo, u)};
        for (const auto &c : candidates) {
            const auto clipped = clip(c, phi.domain());
            if (!clipped) {
                continue;
            }
            try {
                const bool cert = check_image_within(phi.expr(), *clipped, *clipped);
                return std::make_pair(*clipped, cert);
            } catch (const NotSelfMap &) {
            }
        }
    }
    return std::nullopt;
}

Rational dyadic_below(double x)
{
    const double scaled = std::floor(std::ldexp(x, 40));
    if (!(scaled >= 1)) {
        return Rational(1, 1) / Rational(Integer(1) << 40);
    }
    Rational q(scaled);
    q /= Rational(Integer(1) << 40);
    return q;
}

} // namespace

GlobalSolution GlobalSolution::build(const AnalyticSymbol &phi, const RealValue &u, const GaussRational &lambda, const Expr &gamma,
                                     const GlobalOptions &options)
{
    GlobalSolution sol(phi);
    sol.u_ = u;
    sol.gamma_ = gamma;
    sol.precision_ = options.precision;
    const mpfr_prec_t prec = options.precision;
    sol.local_ = solve_formal(phi, u, lambda, gamma, options.order, prec + 64);
    const RealValue &m = sol.local_.multiplier;

    if (sol.local_.series.exact() && u.is_exact() && exact_solution(phi, sol.local_.series, u.rational(), lambda, gamma)) {
        sol.exact_ = true;
        const Rational uq = u.rational();
        sol.series_region_ = *clip(Interval(Rational(uq - 1), Rational(uq + 1)), phi.domain());
        if (auto core = invariant_core(phi, uq, 1, 20)) {
            sol.core_ = core->first;
            sol.core_certified_ = core->second;
        } else {
            sol.core_ = sol.series_region_;
            sol.core_certified_ = false;
            sol.notes_.push_back("no invariant core near the fixed point; forward orbits use the series region");
        }
        sol.notes_.push_back("polynomial solution; exact at rational points");
    } else {
        if (!sign_ok_abs_below_one(m, prec)) {
            throw NoConvergentLocalSolution("continuation of a non-polynomial solution needs an attracting fixed point, multiplier " +
                                            m.to_string(20));
        }
        const RadiusVerdict &rv = sol.local_.radius;
        if (rv.kind != RadiusVerdict::Kind::converges) {
            throw NoConvergentLocalSolution("local series verdict " + to_string(rv.kind) + ": " + rv.reason);
        }
        const double r_est = rv.infinite ? 1.0 : *rv.r_est;
        const double n = static_cast<double>(options.order);
        const double rho = std::min(r_est / 2, r_est * std::exp2(-(static_cast<double>(prec) + 16) / n));
        const Rational uq = u.to_bigfloat(prec + 64).to_rational();
        Rational r = dyadic_below(rho);
        const BigFloat target = pow2(-(static_cast<long>(prec) - 24), 64);
        bool found = false;
        for (int attempt = 0; attempt < 40 && !found; ++attempt, r /= 2) {
            auto core = invariant_core(phi, uq, r, 0);
            if (!core || !(core->first.lower() < ExtRational(uq) && ExtRational(uq) < core->first.upper())) {
                continue;
            }
            sol.core_ = core->first;
            sol.series_region_ = core->first;
            sol.core_certified_ = core->second;
            // Spot check of the series residual across the core.
            const Context ctx(sol, prec + 64);
            bool ok = true;
            for (const auto &y : core->first.grid(9)) {
                const auto res = ctx.series_residual(make_pt(y, prec + 64));
                ok = ok && res && *res < target;
            }
            found = ok;
        }
        if (!found) {
            throw NoConvergentLocalSolution("no core radius with series residual below 2^-" + std::to_string(prec - 24));
        }
    }

    sol.rules_.push_back({ExtensionRule::Kind::forward_orbit, options.max_depth, sol.core_, std::nullopt, "phi orbit into the core"});
    if (phi.is_polynomial() && phi.polynomial().degree() >= 2) {
        const Polynomial &p = phi.polynomial();
        const Rational uq = u.to_bigfloat(prec).to_rational();
        if (abs_at_least_one(m)) {
            // Monotone branch around u between neighbouring critical points.
            ExtRational lo = ExtRational::neg_inf();
            ExtRational hi = ExtRational::pos_inf();
            bool on_critical = false;
            for (const auto &c : critical_points(phi)) {
                const auto [clo, chi] = c.enclose(64);
                if (chi < uq && ExtRational(chi) > lo) {
                    lo = chi;
                } else if (clo > uq && ExtRational(clo) < hi) {
                    hi = clo;
                } else if (!(chi < uq) && !(clo > uq)) {
                    on_critical = true;
                }
            }
            if (!on_critical) {
                if (auto region = clip(Interval(lo, hi), phi.domain())) {
                    sol.rules_.push_back({ExtensionRule::Kind::inverse_branch, options.max_depth, *region, std::nullopt,
                                          "inverse of phi on " + region->to_string()});
                }
            }
        }
        const int d = p.degree();
        const Rational axis = -p.coeff(d - 1) / (Rational(d) * p.leading());
        const Polynomial reflected = p.compose(Polynomial({2 * axis, Rational(-1)}));
        if (reflected == p && phi.domain().is_real_line() && uq != axis) {
            const Interval side = uq < axis ? Interval(ExtRational::neg_inf(), axis) : Interval(axis, ExtRational::pos_inf());
            sol.rules_.push_back({ExtensionRule::Kind::mirror, options.max_depth, side, axis, "reflection about " + to_string(axis)});
        }
    }
    return sol;
}

Evaluation extend_forward(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec)
{
    return escalate(prec, [&](mpfr_prec_t w) { return forward_once(sol, x, w); });
}

Evaluation extend_inverse_branch(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec)
{
    return escalate(prec, [&](mpfr_prec_t w) { return inverse_once(sol, x, w); });
}

Evaluation extend_mirror(const GlobalSolution &sol, const RealValue &y, mpfr_prec_t prec)
{
    return escalate(prec, [&](mpfr_prec_t w) { return mirror_once(sol, y, w); });
}

Evaluation evaluate(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec)
{
    try {
        return extend_forward(sol, x, prec);
    } catch (const BasinEscape &forward) {
        if (find_rule(sol, ExtensionRule::Kind::inverse_branch)) {
            try {
                return extend_inverse_branch(sol, x, prec);
            } catch (const BranchDomain &) {
            } catch (const BasinEscape &) {
            }
        }
        if (find_rule(sol, ExtensionRule::Kind::mirror)) {
            try {
                return extend_mirror(sol, x, prec);
            } catch (const ReflectedUncovered &) {
            }
        }
        throw;
    }
}

BigFloat branch_inverse(const GlobalSolution &sol, const BigFloat &x)
{
    const Branch b = branch_of(sol);
    const Pt y{std::nullopt, x};
    if (!in_image(b, y)) {
        throw BranchDomain(x.to_string(20) + " is outside the branch image of " + b.region.to_string());
    }
    return psi(b, y, x.precision()).x;
}

std::vector<BigFloat> preimage_orbit(const Rational &mu, std::size_t n, mpfr_prec_t prec)
{
    if (mu <= 2) {
        throw InvalidParameter("preimage orbit needs mu > 2");
    }
    const BigFloat m(mu, prec);
    const BigFloat m2 = m * m;
    std::vector<BigFloat> xs;
    if (n == 0) {
        return xs;
    }
    xs.emplace_back(1, prec);
    while (xs.size() < n) {
        const BigFloat &x = xs.back();
        xs.push_back(ldexp(x, 1) / (m + sqrt(m2 - ldexp(x, 2))));
    }
    return xs;
}

OrbitSumCheck orbit_sum_check(const GlobalSolution &sol, const RealValue &x, unsigned long n, mpfr_prec_t prec)
{
    const Context ctx(sol, prec);
    std::vector<Pt> orbit{make_pt(x, prec)};
    for (unsigned long j = 0; j < n; ++j) {
        orbit.push_back(ctx.phi(orbit.back()));
    }
    auto value = [&](const Pt &p) {
        const Evaluation e = evaluate(sol, p.q ? RealValue(*p.q) : RealValue(p.x), prec);
        return e.exact ? make_val(*e.exact, prec) : make_val(e.value);
    };
    const Val lhs = value(orbit[n]);
    Val rhs = value(orbit[0]);
    for (unsigned long j = 0; j < n; ++j) {
        rhs = ctx.lambda() * rhs + ctx.gamma(orbit[j]);
    }
    const Val diff = lhs - rhs;
    return {lhs.z, rhs.z, magnitude(diff), diff.q};
}

OrbitSumCheck telescoping_check(const GlobalSolution &sol, unsigned long n, mpfr_prec_t prec)
{
    const AnalyticSymbol &phi = sol.phi();
    if (!phi.is_polynomial() || phi.polynomial().degree() != 2 || phi.polynomial().coeff(0) != 0 || phi.polynomial().coeff(2) != -1 ||
        phi.polynomial().coeff(1) <= 2) {
        throw InvalidParameter("telescoping check needs phi = -x^2 + mu x with mu > 2");
    }
    if (n == 0) {
        throw InvalidParameter("n must be positive");
    }
    const Rational mu = phi.polynomial().coeff(1);
    const Context ctx(sol, prec);
    const std::vector<BigFloat> xs = preimage_orbit(mu, n, prec);
    // x_0 = mu - 1 is fixed, so f(x_0) = gamma(x_0) / (1 - lambda).
    const Val lhs = ctx.gamma(make_pt(mu - 1, prec)) / (make_val(GaussRational(1), prec) - ctx.lambda());
    const Evaluation e = evaluate(sol, RealValue(xs[n - 1]), prec);
    Val rhs = e.exact ? make_val(*e.exact, prec) : make_val(e.value);
    for (std::size_t i = n; i >= 1; --i) {
        rhs = ctx.lambda() * rhs + ctx.gamma(Pt{std::nullopt, xs[i - 1]});
    }
    const Val diff = lhs - rhs;
    return {lhs.z, rhs.z, magnitude(diff), diff.q};
}

WitnessReport witness_demo(const Rational &mu, const GaussRational &lambda, unsigned k, const Rational &c, std::size_t n,
                           mpfr_prec_t prec)
{
    if (mu <= 2) {
        throw InvalidParameter("mu must exceed 2");
    }
    if (lambda.is_zero() || lambda == GaussRational(1) || lambda.norm() > 1) {
        throw InvalidParameter("lambda must satisfy 0 < |lambda| <= 1, lambda != 1");
    }
    if (c <= 0 || c >= Rational(1, 6)) {
        throw InvalidParameter("c must lie in (0, 1/6)");
    }
    if (k == 0 || n == 0) {
        throw InvalidParameter("k and n must be positive");
    }
    WitnessReport r;
    r.mu = mu;
    r.lambda = lambda;
    r.k = k;
    r.c = c;
    r.n = n;
    // gamma_0(x) = (x - mu + 1) / (2 - mu)
    const Polynomial g0 = Polynomial({1 - mu, Rational(1)}) * (1 / (2 - mu));
    const Polynomial g = Polynomial::monomial(1, k) * g0;
    r.gamma = g.to_string();
    r.gamma0_range = {1, (mu - 1) / (mu - 2)};
    r.orbit = preimage_orbit(mu, n, prec);

    const BigComplex l(lambda, prec);
    const GaussRational lhs = GaussRational(g(mu - 1)) / (GaussRational(1) - lambda);
    r.lhs = BigComplex(lhs, prec);
    r.gamma_at_1 = BigFloat(g(Rational(1)), prec);
    BigComplex tail(BigFloat(0, prec), BigFloat(0, prec));
    BigComplex lp = l;
    for (std::size_t i = 2; i <= n; ++i) {
        tail = tail + lp * BigComplex(g(r.orbit[i - 1]), BigFloat(0, prec));
        lp = lp * l;
    }
    r.tail = tail;
    r.bound = BigFloat(6 * c, prec);
    r.margin = abs(r.lhs - BigComplex(r.gamma_at_1, BigFloat(0, prec))) - r.bound;
    r.notes.push_back("gamma_0 ranges over [" + to_string(r.gamma0_range.first) + ", " + to_string(r.gamma0_range.second) +
                      "] in absolute value on [0, 1]");
    r.notes.push_back("assumes a solution with f(0) = gamma(0)/(1 - lambda) = 0; numeric demonstration only");
    return r;
}

} // namespace compspec
