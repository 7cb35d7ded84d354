#include <compspec/series.hpp>

#include <cmath>
#include <functional>

#include <compspec/errors.hpp>
#include <compspec/power_series.hpp>

namespace compspec
{

std::string to_string(RadiusVerdict::Kind k)
{
    switch (k) {
    case RadiusVerdict::Kind::converges:
        return "converges";
    case RadiusVerdict::Kind::diverges:
        return "diverges";
    default:
        return "inconclusive";
    }
}

namespace
{

// Resonance threshold for float solves, relative to the working precision.
bool vanishes(const GaussRational &z, mpfr_prec_t)
{
    return z.is_zero();
}

bool vanishes(const BigComplex &z, mpfr_prec_t prec)
{
    return abs(z) < pow2(-(static_cast<long>(prec) - 16), 64);
}

// Order-by-order solve of f o (u + g) - lambda f = gamma with g(0) = 0:
// (m^n - lambda) f_n = gamma_n - sum_{k<n} f_k [t^n] g^k.
// With `schroeder` the seed f_0 = 0, f_1 = 1 replaces the n <= 1 equations.
template <class T>
std::vector<T> triangular_solve(const std::vector<T> &g, const T &lambda, const std::vector<T> &gamma, std::size_t order, bool schroeder,
                                mpfr_prec_t prec)
{
    const T &like = g.front();
    const T zero = ps::lift(Rational(0), like);
    std::vector<std::vector<T>> powers;
    powers.push_back(ps::zeros(order, like));
    powers[0][0] = ps::lift(Rational(1), like);
    std::vector<T> f(order + 1, zero);
    for (std::size_t n = 0; n <= order; ++n) {
        if (n > 0) {
            powers.push_back(ps::truncate(ps::mul(powers.back(), g), order, like));
        }
        if (schroeder && n <= 1) {
            f[n] = ps::lift(Rational(n), like);
            continue;
        }
        T acc = gamma[n];
        for (std::size_t k = 0; k < n; ++k) {
            acc -= f[k] * powers[k][n];
        }
        const T d = powers[n][n] - lambda;
        if (vanishes(d, prec)) {
            throw ResonantEigenvalue(static_cast<unsigned>(n), "lambda equals the multiplier to the power " + std::to_string(n));
        }
        f[n] = acc / d;
    }
    return f;
}

// g = phi - u as a series without constant term.
template <class T>
std::vector<T> centered(std::vector<T> jet)
{
    jet[0] = ps::lift(Rational(0), jet[0]);
    return jet;
}

void check_fixed(const AnalyticSymbol &phi, const RealValue &u, mpfr_prec_t prec)
{
    const RealValue v = phi.eval(u, prec);
    if (u.is_exact() && v.is_exact()) {
        if (v.rational() != u.rational()) {
            throw InvalidParameter(u.to_string() + " is not a fixed point: phi(u) = " + v.to_string());
        }
        return;
    }
    const BigFloat a = u.to_bigfloat(prec);
    const BigFloat diff = abs(v.to_bigfloat(prec) - a);
    const BigFloat scale = abs(a) > BigFloat(1, prec) ? abs(a) : BigFloat(1, prec);
    if (diff > ldexp(scale, -static_cast<long>(prec) + 24)) {
        throw InvalidParameter(u.to_string() + " is not a fixed point: |phi(u) - u| = " + diff.to_string(6));
    }
}

} // namespace

TruncatedSeries expr_jet(const Expr &e, const RealValue &center, std::size_t order, mpfr_prec_t prec)
{
    if (center.is_exact()) {
        if (auto j = jet_exact(e, center.rational(), order)) {
            return TruncatedSeries::real(center, *j);
        }
    }
    return TruncatedSeries::real(center, jet_float(e, center.to_bigfloat(prec), order));
}

TruncatedSeries series_compose(const TruncatedSeries &f, const TruncatedSeries &phi_jet)
{
    if (!(f.center() == phi_jet.center())) {
        throw CenterMismatch("series centers differ: " + f.center().to_string() + " vs " + phi_jet.center().to_string());
    }
    if (f.order() != phi_jet.order()) {
        throw CenterMismatch("series orders differ");
    }
    const std::size_t n = f.order();
    if (f.exact() && phi_jet.exact()) {
        const GaussRational c0 = phi_jet.exact_coeffs()[0];
        if (!phi_jet.center().is_exact() || !(c0 == GaussRational(phi_jet.center().rational()))) {
            throw CenterMismatch("phi does not fix the center");
        }
        return TruncatedSeries(f.center(), ps::truncate(ps::compose(f.exact_coeffs(), centered(phi_jet.exact_coeffs())), n, GaussRational()));
    }
    const mpfr_prec_t prec = std::max(f.exact() ? 0 : f.precision(), phi_jet.exact() ? 0 : phi_jet.precision());
    const auto g = phi_jet.complex_floats(prec);
    const BigFloat c = phi_jet.center().to_bigfloat(prec);
    if (abs(g[0] - BigComplex(c)) > ldexp(abs(c) + BigFloat(1, prec), -static_cast<long>(prec) + 24)) {
        throw CenterMismatch("phi does not fix the center");
    }
    const auto out = ps::compose(f.complex_floats(prec), centered(g));
    return TruncatedSeries(f.center(), ps::truncate(out, n, g[0]), prec);
}

TruncatedSeries resolvent_residual(const TruncatedSeries &phi_jet, const TruncatedSeries &f, const GaussRational &lambda,
                                   const TruncatedSeries &gamma_jet)
{
    const TruncatedSeries fc = series_compose(f, phi_jet);
    if (fc.exact() && gamma_jet.exact()) {
        std::vector<GaussRational> r(f.order() + 1);
        for (std::size_t k = 0; k <= f.order(); ++k) {
            r[k] = fc.exact_coeffs()[k] - lambda * f.exact_coeffs()[k] - gamma_jet.exact_coeffs()[k];
        }
        return TruncatedSeries(f.center(), std::move(r));
    }
    const mpfr_prec_t prec = fc.exact() ? gamma_jet.precision() : fc.precision();
    std::vector<BigComplex> r;
    const BigComplex l(lambda, prec);
    for (std::size_t k = 0; k <= f.order(); ++k) {
        r.push_back(fc.coeff(k, prec) - l * f.coeff(k, prec) - gamma_jet.coeff(k, prec));
    }
    return TruncatedSeries(f.center(), std::move(r), prec);
}

LocalSolution solve_formal(const AnalyticSymbol &phi, const RealValue &u, const GaussRational &lambda, const Expr &gamma, std::size_t order,
                           mpfr_prec_t prec)
{
    if (lambda.is_zero()) {
        throw ZeroLambda("lambda must be non-zero");
    }
    check_fixed(phi, u, prec);
    const TruncatedSeries pj = phi.jet(u, order, prec);
    const TruncatedSeries gj = expr_jet(gamma, u, order, prec);

    LocalSolution out;
    out.lambda = lambda;
    out.gamma = to_string(gamma);
    if (pj.exact() && gj.exact()) {
        out.multiplier = pj.exact_coeffs()[1].re;
        const auto f = triangular_solve(centered(pj.exact_coeffs()), lambda, gj.exact_coeffs(), order, false, prec);
        out.series = TruncatedSeries(u, f);
    } else {
        out.multiplier = pj.coeff(1, prec).re;
        const auto f = triangular_solve(centered(pj.complex_floats(prec)), BigComplex(lambda, prec), gj.complex_floats(prec), order, false, prec);
        out.series = TruncatedSeries(u, f, prec);
    }
    if (order >= 16) {
        out.radius = estimate_radius(out.series);
    } else {
        out.radius.reason = "order below 16";
    }
    return out;
}

std::vector<GaussRational> quadratic_id_recurrence(const GaussRational &lambda, std::size_t order)
{
    if (lambda == GaussRational(1)) {
        throw InvalidParameter("lambda = 1 is excluded");
    }
    const GaussRational inv = GaussRational(1) / (GaussRational(1) - lambda);
    std::vector<GaussRational> f(order + 1);
    if (order >= 1) {
        f[1] = inv;
    }
    for (std::size_t n = 2; n <= order; ++n) {
        GaussRational acc;
        for (std::size_t j = 1; j <= n / 2; ++j) {
            const GaussRational term = GaussRational(Rational(binomial(n - j, j))) * f[n - j];
            acc = (j % 2 == 1) ? acc + term : acc - term;
        }
        f[n] = inv * acc;
    }
    return f;
}

std::vector<bool> smajdor_condition(const GaussRational &lambda, const Rational &m, std::size_t order)
{
    if (lambda.is_zero()) {
        throw ZeroLambda("lambda must be non-zero");
    }
    std::vector<bool> out;
    Rational p = 1;
    for (std::size_t n = 0; n <= order; ++n) {
        out.push_back(!(lambda == GaussRational(p)));
        p *= m;
    }
    return out;
}

TruncatedSeries koenigs(const AnalyticSymbol &phi, const RealValue &u, std::size_t order, mpfr_prec_t prec)
{
    check_fixed(phi, u, prec);
    const TruncatedSeries pj = phi.jet(u, std::max<std::size_t>(order, 1), prec);
    if (pj.exact()) {
        const Rational m = pj.exact_coeffs()[1].re;
        if (m == 0 || abs(m) >= 1) {
            throw NeutralOrSuperattracting("Koenigs linearization needs 0 < |m| < 1, m = " + to_string(m));
        }
        const auto g = centered(pj.exact_coeffs());
        return TruncatedSeries(u, triangular_solve(g, GaussRational(m), ps::zeros(order, GaussRational()), order, true, prec));
    }
    const BigFloat m = pj.coeff(1, prec).re;
    const BigFloat margin = pow2(-static_cast<long>(prec) / 2, prec);
    if (abs(m) < margin || abs(m) > BigFloat(1, prec) - margin) {
        throw NeutralOrSuperattracting("Koenigs linearization needs 0 < |m| < 1, m ~ " + m.to_string(20));
    }
    const auto g = centered(pj.complex_floats(prec));
    const BigComplex zero(BigFloat(0, prec), BigFloat(0, prec));
    return TruncatedSeries(u, triangular_solve(g, BigComplex(m, BigFloat(0, prec)), ps::zeros(order, zero), order, true, prec), prec);
}

Eigenfunction eigenfunction(const AnalyticSymbol &phi, const RealValue &u, unsigned n, std::size_t order, mpfr_prec_t prec)
{
    const TruncatedSeries s = koenigs(phi, u, order, prec);
    const RealValue m = phi.derivative(u, prec);
    if (s.exact()) {
        return {TruncatedSeries(u, ps::truncate(ps::power(s.exact_coeffs(), n), order, GaussRational())),
                RealValue(rational_pow(m.rational(), n))};
    }
    const auto c = s.complex_floats(prec);
    return {TruncatedSeries(u, ps::truncate(ps::power(c, n), order, c[0]), prec), RealValue(pow(m.to_bigfloat(prec), n))};
}

namespace
{

double log2_abs(const TruncatedSeries &s, std::size_t n)
{
    if (s.exact()) {
        const GaussRational &z = s.exact_coeffs()[n];
        return 0.5 * BigFloat(z.norm(), 128).log2_abs();
    }
    return abs(s.float_coeffs()[n]).log2_abs();
}

bool is_zero_coeff(const TruncatedSeries &s, std::size_t n)
{
    return s.exact() ? s.exact_coeffs()[n].is_zero() : s.float_coeffs()[n].is_zero();
}

// Exact check of |f_n| >= (n-1)! c^n, on squares to stay rational.
bool factorial_bound(const GaussRational &f, std::size_t n, const Rational &c)
{
    const Rational rhs = Rational(factorial(n - 1)) * rational_pow(c, n);
    return f.norm() >= rhs * rhs;
}

} // namespace

RadiusVerdict estimate_radius(const TruncatedSeries &s)
{
    const std::size_t order = s.order();
    if (order < 16) {
        throw InvalidParameter("radius estimation needs order >= 16");
    }
    RadiusVerdict out;
    const std::size_t lo = (order + 1) / 2;
    std::vector<std::pair<std::size_t, double>> roots; // (n, r_n)
    for (std::size_t n = std::max<std::size_t>(lo, 1); n <= order; ++n) {
        if (!is_zero_coeff(s, n)) {
            roots.emplace_back(n, std::exp2(-log2_abs(s, n) / static_cast<double>(n)));
        }
    }
    if (roots.empty()) {
        out.kind = RadiusVerdict::Kind::converges;
        out.infinite = true;
        out.reason = "tail coefficients vanish (polynomial)";
        return out;
    }

    // Super-geometric growth: r_n strictly decreasing over a full tail and
    // halving-type decay, then an exact factorial lower bound.
    if (s.exact() && roots.size() == order - lo + 1) {
        bool decreasing = true;
        for (std::size_t i = 1; i < roots.size(); ++i) {
            decreasing = decreasing && roots[i].second < roots[i - 1].second;
        }
        if (decreasing && roots.back().second <= 0.75 * roots.front().second) {
            double log_c = INFINITY;
            for (const auto &[n, r] : roots) {
                log_c = std::min(log_c, (log2_abs(s, n) - BigFloat(Rational(factorial(n - 1)), 128).log2_abs()) / static_cast<double>(n));
            }
            // Rational c slightly below the fitted value.
            const double cd = std::exp2(log_c) * 0.999;
            const Rational c = convergents(Rational(cd), Integer(1) << 20).back();
            bool holds = c > 0;
            for (std::size_t n = lo; n <= order && holds; ++n) {
                holds = factorial_bound(s.exact_coeffs()[n], n, c);
            }
            if (holds) {
                out.kind = RadiusVerdict::Kind::diverges;
                out.c = c;
                out.from = lo;
                out.to = order;
                out.reason = "|f_n| >= (n-1)! c^n on the tail with c = " + to_string(c);
                return out;
            }
        }
    }

    double lo_r = INFINITY;
    double hi_r = 0;
    for (const auto &[n, r] : roots) {
        lo_r = std::min(lo_r, r);
        hi_r = std::max(hi_r, r);
    }
    if (hi_r > 0 && std::isfinite(hi_r) && (hi_r - lo_r) / hi_r < 0.25) {
        out.kind = RadiusVerdict::Kind::converges;
        out.r_est = roots.back().second;
        out.reason = "root test stabilizes over the tail";
        return out;
    }
    out.reason = "root test does not stabilize";
    return out;
}

} // namespace compspec
