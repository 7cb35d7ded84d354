#include <compspec/rootwork.hpp>

#include <cmath>
#include <functional>

#include <compspec/errors.hpp>

namespace compspec
{

std::string to_string(Tri t)
{
    switch (t) {
    case Tri::yes:
        return "true";
    case Tri::no:
        return "false";
    default:
        return "unknown";
    }
}

std::string to_string(FixedPointRecord::Kind k)
{
    switch (k) {
    case FixedPointRecord::Kind::superattracting:
        return "superattracting";
    case FixedPointRecord::Kind::attracting:
        return "attracting";
    case FixedPointRecord::Kind::neutral:
        return "neutral";
    case FixedPointRecord::Kind::repelling:
        return "repelling";
    default:
        return "neutral?";
    }
}

std::string to_string(SignVsId s)
{
    switch (s) {
    case SignVsId::above:
        return "above";
    case SignVsId::below:
        return "below";
    default:
        return "n/a";
    }
}

std::string to_string(BasinVerdict::Kind k)
{
    switch (k) {
    case BasinVerdict::Kind::certified:
        return "certified";
    case BasinVerdict::Kind::sampled_true:
        return "sampled-true";
    default:
        return "false";
    }
}

FixedPointRecord::Kind classify_multiplier(const RealNumber &m)
{
    if (m.compare(0) == 0) {
        return FixedPointRecord::Kind::superattracting;
    }
    const auto c = m.compare_abs(1);
    if (!c) {
        return FixedPointRecord::Kind::neutral_unresolved;
    }
    if (*c < 0) {
        return FixedPointRecord::Kind::attracting;
    }
    return *c == 0 ? FixedPointRecord::Kind::neutral : FixedPointRecord::Kind::repelling;
}

namespace
{

constexpr std::size_t scan_points = 4096;
constexpr mpfr_prec_t scan_prec = 192;
constexpr unsigned bisection_steps = 120;

// Real roots of q inside J as exact numbers: rationals, quadratic surds when
// the part of q without rational roots is quadratic, else real algebraic.
std::vector<RealAlgebraic> algebraic_roots(const Polynomial &q, const Interval &j)
{
    std::vector<RealAlgebraic> out;
    const Polynomial qs = squarefree_part(q);
    for (const auto &e : isolate_roots(qs, j)) {
        out.emplace_back(e.exact() ? RealAlgebraic(e.lo) : RealAlgebraic(qs, e.lo, e.hi));
    }
    return out;
}

Polynomial without_rational_roots(const Polynomial &q)
{
    Polynomial rest = squarefree_part(q);
    for (const auto &e : isolate_roots(rest, Interval())) {
        if (e.exact()) {
            rest = divmod(rest, Polynomial({-e.lo, Rational(1)})).first;
        }
    }
    return rest.primitive();
}

RealNumber as_number(const RealAlgebraic &a, const Polynomial &rest)
{
    if (a.is_rational()) {
        return a.rational();
    }
    if (rest.degree() == 2) {
        const Rational &c2 = rest.coeff(2);
        const Rational &c1 = rest.coeff(1);
        const Rational &c0 = rest.coeff(0);
        const QuadSurd sq(0, 1, c1 * c1 - 4 * c2 * c0);
        for (const QuadSurd &r : {(QuadSurd(-c1) + sq) / QuadSurd(2 * c2), (QuadSurd(-c1) - sq) / QuadSurd(2 * c2)}) {
            if (QuadSurd(a.lo()) < r && r < QuadSurd(a.hi())) {
                return r;
            }
        }
    }
    return RealAlgebraic(rest.degree() > 0 ? rest : a.poly(), a.lo(), a.hi());
}

RealNumber image_of(const RealNumber &x, const Polynomial &g)
{
    switch (x.kind()) {
    case RealNumber::Kind::rational:
        return g(*x.as_rational());
    case RealNumber::Kind::surd:
        return g(x.surd());
    case RealNumber::Kind::algebraic:
        return RealNumber(x.image().alpha, g.compose(x.image().g));
    case RealNumber::Kind::enclosure:
        break;
    }
    const auto r = g.range(x.bounds().lo, x.bounds().hi);
    return RealNumber::enclosure(r.first, r.second);
}

FixedPointSet polynomial_fixed_points(const Polynomial &map, const Interval &j)
{
    FixedPointSet out;
    const Polynomial q = map - Polynomial::identity();
    if (q.is_zero()) {
        out.all_fixed = true;
        return out;
    }
    const Polynomial rest = without_rational_roots(q);
    const Polynomial d = map.derivative();
    for (const RealAlgebraic &a : algebraic_roots(q, j)) {
        FixedPointRecord r;
        r.location = as_number(a, rest);
        r.multiplier = image_of(r.location, d);
        r.kind = classify_multiplier(r.multiplier);
        out.points.push_back(std::move(r));
    }
    return out;
}

Rational to_q(const BigFloat &x)
{
    return x.to_rational();
}

// A root of f bracketed by a sign change on (lo, hi), refined by bisection
// and snapped to the simplest rational when `exact_zero` confirms it.
struct Bracketed {
    Rational lo;
    Rational hi;
    std::optional<Rational> exact;
};

Bracketed refine_bracket(const std::function<BigFloat(const BigFloat &)> &f, Rational lo, Rational hi, mpfr_prec_t prec, unsigned steps,
                         const std::function<bool(const Rational &)> &exact_zero)
{
    int slo = f(BigFloat(lo, prec)).sign();
    for (unsigned k = 0; k < steps; ++k) {
        const Rational mid = (lo + hi) / 2;
        const int sm = f(BigFloat(mid, prec)).sign();
        if (sm == 0) {
            if (exact_zero(mid)) {
                return {mid, mid, mid};
            }
            break;
        }
        if (sm == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const Rational cand = simplest_between(lo, hi);
    if (exact_zero(cand)) {
        return {cand, cand, cand};
    }
    return {lo, hi, std::nullopt};
}

// Sign-change scan of f over the sample grid of J.
std::vector<Bracketed> scan_roots(const Interval &j, const std::function<BigFloat(const BigFloat &)> &f,
                                  const std::function<bool(const Rational &)> &exact_zero)
{
    std::vector<Bracketed> out;
    const std::vector<Rational> grid = j.grid(scan_points);
    std::optional<Rational> prev_x;
    int prev_s = 0;
    for (const Rational &x : grid) {
        const int s = f(BigFloat(x, scan_prec)).sign();
        if (s == 0) {
            if (exact_zero(x)) {
                out.push_back({x, x, x});
            }
            continue;
        }
        if (prev_x && prev_s != 0 && s != prev_s) {
            out.push_back(refine_bracket(f, *prev_x, x, scan_prec, bisection_steps, exact_zero));
        }
        prev_x = x;
        prev_s = s;
    }
    return out;
}

// Float multiplier enclosure around a bracketed point; widened to 512 bits
// if it cannot decide |m| against 0 and 1.
RealNumber float_multiplier(const std::function<BigFloat(const BigFloat &)> &deriv, const Bracketed &b,
                            const std::function<BigFloat(const BigFloat &)> &f)
{
    auto enclose = [&](const Rational &lo, const Rational &hi, mpfr_prec_t prec, long err_bits) {
        const BigFloat m = deriv(BigFloat((lo + hi) / 2, prec));
        const BigFloat scale = abs(m) > BigFloat(1, prec) ? abs(m) : BigFloat(1, prec);
        const BigFloat eps = ldexp(scale, -err_bits);
        return RealNumber::enclosure(to_q(m - eps), to_q(m + eps));
    };
    RealNumber m = enclose(b.lo, b.hi, scan_prec, 80);
    if (classify_multiplier(m) != FixedPointRecord::Kind::neutral_unresolved) {
        return m;
    }
    const Bracketed fine = refine_bracket(f, b.lo, b.hi, 600, 520, [](const Rational &) { return false; });
    return enclose(fine.lo, fine.hi, 600, 400);
}

FixedPointSet scanned_fixed_points(const AnalyticSymbol &phi, unsigned iterates)
{
    FixedPointSet out;
    out.exhaustive = false;
    auto f = [&](const BigFloat &x) {
        BigFloat y = phi.eval(x);
        if (iterates == 2) {
            y = phi.eval(y);
        }
        return y - x;
    };
    auto exact_zero = [&](const Rational &x) {
        try {
            const RealValue y = phi.iterate(iterates, RealValue(x), scan_prec);
            return y.is_exact() && y.rational() == x;
        } catch (const Error &) {
            return false;
        }
    };
    auto deriv = [&](const BigFloat &x) {
        if (iterates == 1) {
            return phi.derivative(x);
        }
        return phi.derivative(phi.eval(x)) * phi.derivative(x);
    };
    for (const Bracketed &b : scan_roots(phi.domain(), f, exact_zero)) {
        FixedPointRecord r;
        if (b.exact) {
            r.location = *b.exact;
            RealValue m1 = phi.derivative(RealValue(*b.exact), scan_prec);
            if (iterates == 2 && m1.is_exact()) {
                const RealValue y = phi.eval(RealValue(*b.exact), scan_prec);
                const RealValue m2 = phi.derivative(y, scan_prec);
                m1 = m2.is_exact() ? RealValue(Rational(m1.rational() * m2.rational())) : RealValue(m1.to_bigfloat(scan_prec) * m2.approx());
            } else if (iterates == 2) {
                m1 = RealValue(deriv(BigFloat(*b.exact, scan_prec)));
            }
            r.multiplier = m1.is_exact() ? RealNumber(m1.rational()) : float_multiplier(deriv, b, f);
        } else {
            r.location = RealNumber::enclosure(b.lo, b.hi);
            r.multiplier = float_multiplier(deriv, b, f);
        }
        r.kind = classify_multiplier(r.multiplier);
        out.points.push_back(std::move(r));
    }
    return out;
}

ExtRational end_of(const Interval &j, End e)
{
    return e == End::lower ? j.lower() : j.upper();
}

} // namespace

FixedPointSet find_fixed_points(const AnalyticSymbol &phi)
{
    if (phi.is_polynomial()) {
        return polynomial_fixed_points(phi.polynomial(), phi.domain());
    }
    return scanned_fixed_points(phi, 1);
}

FixedPointSet find_fixed_points_second_iterate(const AnalyticSymbol &phi, unsigned degree_cap)
{
    if (phi.is_polynomial()) {
        const auto d = static_cast<unsigned long>(phi.polynomial().degree());
        if (d * d > degree_cap) {
            throw DegreeOverflow("phi^[2] has degree " + std::to_string(d * d) + " > cap " + std::to_string(degree_cap));
        }
        return polynomial_fixed_points(phi.polynomial().compose(phi.polynomial()), phi.domain());
    }
    return scanned_fixed_points(phi, 2);
}

std::vector<RealNumber> critical_points(const AnalyticSymbol &phi, bool *exhaustive)
{
    std::vector<RealNumber> out;
    if (phi.is_polynomial()) {
        const Polynomial d = phi.polynomial().derivative();
        const Polynomial rest = without_rational_roots(d);
        for (const RealAlgebraic &a : algebraic_roots(d, phi.domain())) {
            out.push_back(as_number(a, rest));
        }
        if (exhaustive != nullptr) {
            *exhaustive = true;
        }
        return out;
    }
    auto f = [&](const BigFloat &x) { return phi.derivative(x); };
    auto exact_zero = [&](const Rational &x) {
        const RealValue m = phi.derivative(RealValue(x), scan_prec);
        return m.is_exact() && m.rational() == 0;
    };
    for (const Bracketed &b : scan_roots(phi.domain(), f, exact_zero)) {
        out.push_back(b.exact ? RealNumber(*b.exact) : RealNumber::enclosure(b.lo, b.hi));
    }
    if (exhaustive != nullptr) {
        *exhaustive = false;
    }
    return out;
}

DiffeoVerdict is_diffeomorphism(const AnalyticSymbol &phi)
{
    DiffeoVerdict v;
    const Interval &j = phi.domain();
    bool exhaustive = true;
    const auto crit = critical_points(phi, &exhaustive);
    v.certified = exhaustive;
    if (!crit.empty()) {
        v.value = Tri::no;
        v.reason = "phi' vanishes at " + crit.front().to_string();
        return v;
    }
    const BigFloat slope = phi.derivative(BigFloat(j.interior_point(), scan_prec));
    const int orient = slope.sign();
    if (orient == 0) {
        v.value = Tri::no;
        v.reason = "phi' vanishes inside J";
        return v;
    }
    for (End e : {End::lower, End::upper}) {
        const ExtRational point = end_of(j, e);
        const ExtRational target = end_of(j, (orient > 0) == (e == End::lower) ? End::lower : End::upper);
        const Limit l = limit_at(phi.expr(), point, scan_prec);
        const std::string where = "limit at " + point.to_string();
        if (l.kind == Limit::Kind::unknown) {
            v.value = Tri::unknown;
            v.certified = false;
            v.reason = where + " is not determined by the limit rules";
            return v;
        }
        if (!target.is_finite()) {
            const bool ok = (l.kind == Limit::Kind::pos_inf && target.kind() == ExtRational::Kind::pos_inf) ||
                            (l.kind == Limit::Kind::neg_inf && target.kind() == ExtRational::Kind::neg_inf);
            if (!ok) {
                v.value = Tri::no;
                v.certified = true;
                v.reason = where + (l.kind == Limit::Kind::finite ? " is finite" : " has the wrong sign") + ", so phi is not onto";
                return v;
            }
            continue;
        }
        if (l.kind != Limit::Kind::finite) {
            v.value = Tri::no;
            v.reason = where + " is infinite";
            return v;
        }
        if (l.exact) {
            if (*l.exact != target.value()) {
                v.value = Tri::no;
                v.certified = true;
                v.reason = where + " is " + to_string(*l.exact) + ", not " + target.to_string();
                return v;
            }
            continue;
        }
        if (abs(l.approx - BigFloat(target.value(), scan_prec)) > pow2(-60, scan_prec)) {
            v.value = Tri::no;
            v.reason = where + " misses " + target.to_string();
            return v;
        }
        v.value = Tri::unknown;
        v.certified = false;
        v.reason = where + " cannot be compared exactly with " + target.to_string();
        return v;
    }
    v.value = Tri::yes;
    v.reason = phi.is_polynomial() ? "phi' has no root in J (Sturm) and phi maps the ends of J onto the ends"
                                   : "phi' keeps one sign on the sample grid and the end limits match J";
    return v;
}

Tri critical_set_bounded_away(const AnalyticSymbol &phi, End end)
{
    if (phi.is_polynomial()) {
        return Tri::yes;
    }
    // Walk toward the end geometrically and look for late sign changes of phi'.
    const Interval &j = phi.domain();
    const ExtRational e = end_of(j, end);
    const Rational p = j.interior_point();
    const int steps = 256;
    int last_change = -1;
    int prev = 0;
    for (int k = 0; k <= steps; ++k) {
        BigFloat x(p, scan_prec);
        if (e.is_finite()) {
            const Rational gap = e.value() - p;
            x = BigFloat(p, scan_prec) + BigFloat(gap, scan_prec) * (BigFloat(1, scan_prec) - pow2(-(k / 4 + 1), scan_prec));
        } else {
            const BigFloat mag = ldexp(BigFloat(1, scan_prec), k / 4) * BigFloat(static_cast<long>(4 + k % 4), scan_prec) / BigFloat(4, scan_prec);
            x = e.kind() == ExtRational::Kind::pos_inf ? BigFloat(p, scan_prec) + mag : BigFloat(p, scan_prec) - mag;
        }
        if (!j.contains(x)) {
            break;
        }
        const int s = phi.derivative(x).sign();
        if (s != 0 && prev != 0 && s != prev) {
            last_change = k;
        }
        if (s == 0) {
            last_change = k;
        }
        if (s != 0) {
            prev = s;
        }
    }
    return last_change > steps / 2 ? Tri::unknown : Tri::yes;
}

namespace
{

bool contraction_certificate(const Polynomial &phi, const Interval &j, const Rational &u)
{
    const Polynomial x = Polynomial::identity();
    const Polynomial two_u = Polynomial::constant(2 * u);
    if (ExtRational(u) < j.upper()) {
        const Interval r(std::max(ExtRational(u), j.lower()), j.upper());
        const Polynomial a = x - phi;
        const Polynomial b = phi + x - two_u;
        if (!isolate_roots(a, r).empty() || !isolate_roots(b, r).empty() || !(a(r.interior_point()) > 0) || !(b(r.interior_point()) > 0)) {
            return false;
        }
        if (j.upper().is_finite() && (!(a(j.upper().value()) > 0) || !(b(j.upper().value()) > 0))) {
            return false;
        }
    }
    if (j.lower() < ExtRational(u)) {
        const Interval left(j.lower(), std::min(ExtRational(u), j.upper()));
        const Polynomial a = phi - x;
        const Polynomial b = two_u - x - phi;
        if (!isolate_roots(a, left).empty() || !isolate_roots(b, left).empty() || !(a(left.interior_point()) > 0) || !(b(left.interior_point()) > 0)) {
            return false;
        }
        if (j.lower().is_finite() && (!(a(j.lower().value()) > 0) || !(b(j.lower().value()) > 0))) {
            return false;
        }
    }
    return true;
}

} // namespace

BasinVerdict attraction_basin_check(const AnalyticSymbol &phi, const Interval &core, unsigned long max_depth, std::size_t samples,
                                    const std::vector<Rational> &probes)
{
    const Interval &j = phi.domain();
    // closure(core) inside J, with the fixed-end relaxation.
    for (End e : {End::lower, End::upper}) {
        const ExtRational c = end_of(core, e);
        const ExtRational je = end_of(j, e);
        if (!c.is_finite()) {
            throw HypothesisViolation("core " + core.to_string() + " must be bounded");
        }
        if (j.contains(c.value())) {
            continue;
        }
        if (c == je && phi.is_polynomial() && phi.polynomial()(c.value()) == c.value()) {
            continue;
        }
        throw HypothesisViolation("closure of core " + core.to_string() + " is not inside " + j.to_string());
    }
    try {
        (void)AnalyticSymbol(phi.expr(), core);
    } catch (const NotSelfMap &e) {
        throw HypothesisViolation(std::string("phi(core) is not inside core: ") + e.what());
    }

    BasinVerdict v;
    if (phi.is_polynomial()) {
        std::vector<Rational> candidates;
        for (const auto &r : find_fixed_points(phi).points) {
            if (auto q = r.location.as_rational()) {
                candidates.push_back(*q);
            }
        }
        for (End e : {End::lower, End::upper}) {
            const ExtRational c = end_of(core, e);
            if (c == end_of(j, e) && phi.polynomial()(c.value()) == c.value()) {
                candidates.push_back(c.value());
            }
        }
        for (const Rational &u : candidates) {
            const bool inside = core.contains(u);
            const bool shared_end = (ExtRational(u) == core.lower() && core.lower() == j.lower()) || (ExtRational(u) == core.upper() && core.upper() == j.upper());
            if (!inside && !shared_end) {
                continue;
            }
            if (contraction_certificate(phi.polynomial(), j, u)) {
                v.kind = BasinVerdict::Kind::certified;
                v.reason = "|phi(x) - " + to_string(u) + "| < |x - " + to_string(u) + "| on J (exact sign analysis)";
                return v;
            }
        }
    }

    std::vector<Rational> points = probes;
    const auto grid = j.grid(samples);
    points.insert(points.end(), grid.begin(), grid.end());
    const mpfr_prec_t prec = 128;
    const BigFloat huge = ldexp(BigFloat(1, prec), 256);
    for (const Rational &x0 : points) {
        if (!j.contains(x0)) {
            continue;
        }
        BigFloat x(x0, prec);
        bool entered = false;
        std::string why = "orbit did not enter the core within " + std::to_string(max_depth) + " steps";
        for (unsigned long k = 0; k <= max_depth; ++k) {
            if (core.contains(x)) {
                entered = true;
                break;
            }
            if (!j.contains(x) || abs(x) > huge) {
                why = "orbit escapes (|phi^[" + std::to_string(k) + "](x)| exceeds 2^256 or leaves J)";
                break;
            }
            x = phi.eval(x);
        }
        if (!entered) {
            v.kind = BasinVerdict::Kind::failed;
            v.witness = RealValue(x0);
            v.reason = why;
            return v;
        }
    }
    v.kind = BasinVerdict::Kind::sampled_true;
    v.reason = "all " + std::to_string(points.size()) + " sample orbits entered the core";
    return v;
}

SymbolAnalysis analyze(const AnalyticSymbol &phi, unsigned degree_cap)
{
    SymbolAnalysis a;
    a.fixed_points = find_fixed_points(phi);
    a.is_identity = a.fixed_points.all_fixed;
    try {
        a.fixed_points_sq = find_fixed_points_second_iterate(phi, degree_cap);
    } catch (const DegreeOverflow &e) {
        a.second_iterate_available = false;
        a.fixed_points_sq.exhaustive = false;
        a.notes.push_back(e.what());
    }
    a.is_involution = a.fixed_points_sq.all_fixed && !a.is_identity;
    bool crit_exhaustive = true;
    a.critical_points = critical_points(phi, &crit_exhaustive);
    a.is_diffeo = is_diffeomorphism(phi);
    if (!a.is_identity && a.fixed_points.points.empty()) {
        const Rational p = phi.domain().interior_point();
        const RealValue y = phi.eval(RealValue(p), scan_prec);
        const int s = y.is_exact() ? sgn(y.rational() - p) : (y.approx() - BigFloat(p, scan_prec)).sign();
        a.sign_vs_id = s > 0 ? SignVsId::above : SignVsId::below;
        a.critical_bounded_away = critical_set_bounded_away(phi, s > 0 ? End::upper : End::lower);
    }
    bool unresolved = false;
    for (const auto *set : {&a.fixed_points, &a.fixed_points_sq}) {
        for (const auto &r : set->points) {
            unresolved = unresolved || r.kind == FixedPointRecord::Kind::neutral_unresolved;
        }
    }
    a.certified = phi.certified() && a.fixed_points.exhaustive && a.fixed_points_sq.exhaustive && crit_exhaustive && a.is_diffeo.certified &&
                  !unresolved;
    if (!phi.is_polynomial()) {
        a.notes.emplace_back("fixed points located by sign-change scan; list may be incomplete");
    }
    return a;
}

} // namespace compspec
