#include <compspec/symbol.hpp>

#include <cstdlib>

#include <compspec/errors.hpp>

namespace compspec
{

namespace
{

constexpr std::size_t invariance_samples = 1024;
constexpr mpfr_prec_t check_prec = 128;

ExtRational to_endpoint(const Limit &l)
{
    switch (l.kind) {
    case Limit::Kind::pos_inf:
        return ExtRational::pos_inf();
    case Limit::Kind::neg_inf:
        return ExtRational::neg_inf();
    case Limit::Kind::finite:
        if (l.exact) {
            return *l.exact;
        }
        throw InvalidParameter("image endpoint " + l.approx.to_string(20) + " is not an exact rational");
    case Limit::Kind::unknown:
        break;
    }
    throw InvalidParameter("image endpoint cannot be determined");
}

} // namespace

bool check_image_within(const Expr &e, const Interval &from, const Interval &to)
{
    if (const auto p = as_polynomial(e)) {
        const Rational inside = from.interior_point();
        if (to.lower().is_finite()) {
            const Rational c = to.lower().value();
            if (!isolate_roots(*p - Polynomial::constant(c), from).empty() || !((*p)(inside) > c)) {
                throw NotSelfMap("phi reaches the lower end " + to_string(c) + " of " + to.to_string() + " on " + from.to_string());
            }
        }
        if (to.upper().is_finite()) {
            const Rational d = to.upper().value();
            if (!isolate_roots(*p - Polynomial::constant(d), from).empty() || !((*p)(inside) < d)) {
                throw NotSelfMap("phi reaches the upper end " + to_string(d) + " of " + to.to_string() + " on " + from.to_string());
            }
        }
        return true;
    }
    if (to.is_real_line()) {
        return true;
    }
    for (const Rational &x : from.grid(invariance_samples)) {
        const BigFloat y = eval(e, BigFloat(x, check_prec));
        if (!to.contains(y)) {
            throw NotSelfMap("phi(" + to_string(x) + ") = " + y.to_string(20) + " lies outside " + to.to_string());
        }
    }
    return false;
}

AnalyticSymbol::AnalyticSymbol(Expr body, Interval domain) : expr_(std::move(body)), domain_(std::move(domain))
{
    poly_ = as_polynomial(expr_);
    if (poly_) {
        if (poly_->degree() <= 0) {
            throw ConstantSymbol("symbol " + poly_->to_string() + " is constant");
        }
        certified_ = check_image_within(expr_, domain_, domain_);
        return;
    }
    if (!depends_on_x(expr_)) {
        throw ConstantSymbol("symbol " + to_string(expr_) + " is constant");
    }
    certified_ = check_image_within(expr_, domain_, domain_);
}

AnalyticSymbol AnalyticSymbol::from_polynomial(const Polynomial &p, Interval domain)
{
    return AnalyticSymbol(expr::from_polynomial(p), std::move(domain));
}

std::string AnalyticSymbol::text() const
{
    return poly_ ? poly_->to_string() : to_string(expr_);
}

AnalyticSymbol AnalyticSymbol::with_provenance(Provenance p, bool certified) const
{
    AnalyticSymbol out = *this;
    out.provenance_ = std::make_shared<const Provenance>(std::move(p));
    out.certified_ = out.certified_ && certified;
    return out;
}

void AnalyticSymbol::check_in_domain(const RealValue &x) const
{
    const bool inside = x.is_exact() ? domain_.contains(x.rational()) : domain_.contains(x.approx());
    if (!inside) {
        throw DomainError("point " + x.to_string(20) + " is outside " + domain_.to_string());
    }
}

RealValue AnalyticSymbol::eval(const RealValue &x, mpfr_prec_t prec) const
{
    check_in_domain(x);
    if (x.is_exact()) {
        if (poly_) {
            return (*poly_)(x.rational());
        }
        if (auto v = eval_exact(expr_, x.rational())) {
            return *v;
        }
        return eval(BigFloat(x.rational(), prec));
    }
    return eval(x.approx().rounded(prec));
}

BigFloat AnalyticSymbol::eval(const BigFloat &x) const
{
    if (poly_) {
        // Correctly rounded through rationals unless the input is huge.
        if (x.is_zero() || (x.is_finite() && std::labs(x.exponent()) < 4096)) {
            return BigFloat((*poly_)(x.to_rational()), x.precision());
        }
        return (*poly_)(x);
    }
    return compspec::eval(expr_, x);
}

RealValue AnalyticSymbol::derivative(const RealValue &x, mpfr_prec_t prec) const
{
    check_in_domain(x);
    if (x.is_exact()) {
        if (poly_) {
            return poly_->derivative()(x.rational());
        }
        if (auto j = jet_exact(expr_, x.rational(), 1)) {
            return (*j)[1];
        }
        return derivative(BigFloat(x.rational(), prec));
    }
    return derivative(x.approx().rounded(prec));
}

BigFloat AnalyticSymbol::derivative(const BigFloat &x) const
{
    if (poly_) {
        return BigFloat(poly_->derivative()(x.to_rational()), x.precision());
    }
    return eval_dual(expr_, x).slope;
}

TruncatedSeries AnalyticSymbol::jet(const RealValue &center, std::size_t order, mpfr_prec_t prec) const
{
    check_in_domain(center);
    if (center.is_exact()) {
        const Rational &c = center.rational();
        if (poly_) {
            const Polynomial s = poly_->shift(c);
            std::vector<Rational> co(order + 1, Rational(0));
            for (std::size_t k = 0; k <= order; ++k) {
                co[k] = s.coeff(k);
            }
            return TruncatedSeries::real(center, co);
        }
        if (auto j = jet_exact(expr_, c, order)) {
            return TruncatedSeries::real(center, *j);
        }
    }
    const BigFloat c = center.to_bigfloat(prec);
    if (poly_) {
        // Exact Taylor shift at the float center, then rounding.
        const Polynomial s = poly_->shift(c.to_rational());
        std::vector<BigFloat> co;
        for (std::size_t k = 0; k <= order; ++k) {
            co.emplace_back(s.coeff(k), prec);
        }
        return TruncatedSeries::real(RealValue(c), co);
    }
    return TruncatedSeries::real(RealValue(c), jet_float(expr_, c, order));
}

RealValue AnalyticSymbol::iterate(unsigned long n, const RealValue &x, mpfr_prec_t prec) const
{
    check_in_domain(x);
    RealValue cur = x;
    for (unsigned long k = 1; k <= n; ++k) {
        cur = eval(cur, prec);
        const bool inside = cur.is_exact() ? domain_.contains(cur.rational()) : domain_.contains(cur.approx());
        if (!inside) {
            throw OrbitEscape(static_cast<long>(k), "phi^[" + std::to_string(k) + "](x) = " + cur.to_string(20) + " left " + domain_.to_string());
        }
    }
    return cur;
}

AnalyticSymbol parse_symbol(std::string_view text, const Interval &domain)
{
    return AnalyticSymbol(parse_expression(text), domain);
}

Expr parse_function(std::string_view text)
{
    return parse_expression(text);
}

// ------------------------------------------------------------ diffeomorphism

Diffeomorphism::Diffeomorphism(Expr forward, Interval domain) : fwd_(std::move(forward)), domain_(std::move(domain))
{
    fwd_poly_ = as_polynomial(fwd_);
    if (fwd_poly_) {
        const Polynomial d = fwd_poly_->derivative();
        if (d.is_zero()) {
            throw NotADiffeomorphism("delta is constant");
        }
        if (!isolate_roots(d, domain_).empty()) {
            throw NotADiffeomorphism("delta' vanishes inside " + domain_.to_string());
        }
        mono_ = sgn(d(domain_.interior_point()));
    } else {
        certified_ = false;
        int seen = 0;
        for (const Rational &x : domain_.grid(invariance_samples)) {
            const BigFloat s = eval_dual(fwd_, BigFloat(x, check_prec)).slope;
            const int sg = s.sign();
            if (sg == 0 || (seen != 0 && sg != seen)) {
                throw NotADiffeomorphism("delta' changes sign near " + to_string(x));
            }
            seen = sg;
        }
        mono_ = seen;
    }
    const ExtRational a = to_endpoint(limit_at(fwd_, domain_.lower(), check_prec));
    const ExtRational b = to_endpoint(limit_at(fwd_, domain_.upper(), check_prec));
    codomain_ = mono_ > 0 ? Interval(a, b) : Interval(b, a);

    if (fwd_poly_ && fwd_poly_->degree() == 1) {
        const Rational s = fwd_poly_->coeff(1);
        const Rational o = fwd_poly_->coeff(0);
        inv_poly_ = Polynomial({-o / s, Rational(1) / s});
        inv_ = expr::from_polynomial(*inv_poly_);
        return;
    }
    if (!domain_.is_real_line() || !codomain_.is_real_line()) {
        throw InvalidParameter("non-affine delta must map the real line onto itself");
    }
    inv_ = expr::inverse(fwd_, mono_, expr::variable());
}

Diffeomorphism Diffeomorphism::identity(Interval domain)
{
    return Diffeomorphism(expr::variable(), std::move(domain));
}

Diffeomorphism Diffeomorphism::affine(const Rational &slope, const Rational &offset)
{
    return Diffeomorphism(expr::from_polynomial(Polynomial({offset, slope})), Interval());
}

Diffeomorphism Diffeomorphism::parse(std::string_view text, const Interval &domain)
{
    return Diffeomorphism(parse_expression(text), domain);
}

RealValue Diffeomorphism::apply(const RealValue &x, mpfr_prec_t prec) const
{
    if (x.is_exact()) {
        if (auto v = eval_exact(fwd_, x.rational())) {
            return *v;
        }
    }
    return compspec::eval(fwd_, x.to_bigfloat(prec));
}

RealValue Diffeomorphism::apply_inverse(const RealValue &y, mpfr_prec_t prec) const
{
    if (y.is_exact()) {
        if (inv_poly_) {
            return (*inv_poly_)(y.rational());
        }
        if (auto v = eval_exact(inv_, y.rational())) {
            return *v;
        }
    }
    return compspec::eval(inv_, y.to_bigfloat(prec));
}

Diffeomorphism Diffeomorphism::inverse() const
{
    Diffeomorphism d;
    d.fwd_ = inv_;
    d.inv_ = fwd_;
    d.fwd_poly_ = inv_poly_;
    d.inv_poly_ = fwd_poly_;
    d.domain_ = codomain_;
    d.codomain_ = domain_;
    d.mono_ = mono_;
    d.certified_ = certified_;
    if (!d.inv_poly_ || d.inv_poly_->degree() != 1) {
        d.inv_poly_.reset();
    }
    return d;
}

AnalyticSymbol conjugate(const AnalyticSymbol &phi, const Diffeomorphism &delta)
{
    if (!(delta.codomain() == phi.domain())) {
        throw DomainError("delta maps onto " + delta.codomain().to_string() + ", not onto " + phi.domain().to_string());
    }
    const bool certified = phi.certified() && delta.certified();
    Provenance prov{Provenance::Kind::conjugate, std::make_shared<const AnalyticSymbol>(phi), std::make_shared<const Diffeomorphism>(delta)};
    if (phi.is_polynomial() && delta.is_affine()) {
        const Polynomial psi = delta.inverse_polynomial()->compose(phi.polynomial().compose(*delta.forward_polynomial()));
        return AnalyticSymbol::from_polynomial(psi, delta.domain()).with_provenance(std::move(prov), certified);
    }
    const Expr body = expr::substitute(delta.inverse_expr(), expr::substitute(phi.expr(), delta.forward()));
    if (auto p = as_polynomial(body)) {
        return AnalyticSymbol::from_polynomial(*p, delta.domain()).with_provenance(std::move(prov), certified);
    }
    return AnalyticSymbol(body, delta.domain()).with_provenance(std::move(prov), certified);
}

AnalyticSymbol inverse_symbol(const AnalyticSymbol &phi)
{
    const Diffeomorphism d(phi.expr(), phi.domain());
    if (!(d.codomain() == phi.domain())) {
        throw NotADiffeomorphism("phi maps " + phi.domain().to_string() + " onto " + d.codomain().to_string());
    }
    const Diffeomorphism inv = d.inverse();
    Provenance prov{Provenance::Kind::inverse, std::make_shared<const AnalyticSymbol>(phi), nullptr};
    const bool certified = phi.certified() && d.certified();
    if (inv.forward_polynomial()) {
        return AnalyticSymbol::from_polynomial(*inv.forward_polynomial(), phi.domain()).with_provenance(std::move(prov), certified);
    }
    return AnalyticSymbol(inv.forward(), phi.domain()).with_provenance(std::move(prov), certified);
}

QuadraticNormalForm normalize_quadratic(const Rational &a, const Rational &b, const Rational &c)
{
    if (a == 0) {
        throw InvalidParameter("normalize_quadratic needs a != 0");
    }
    QuadraticNormalForm out;
    const Rational disc = (b - 1) * (b - 1) - 4 * a * c;
    if (disc < 0) {
        return out;
    }
    out.has_fixed_points = true;
    const QuadSurd root = QuadSurd(0, 1, disc);
    const QuadSurd two_a(Rational(2 * a));
    out.u = (QuadSurd(Rational(1 - b)) + root) / two_a;
    out.v = (QuadSurd(Rational(1 - b)) - root) / two_a;
    out.mu = QuadSurd(1) + QuadSurd(a) * (out.u - out.v);
    out.slope = Rational(-1) / a;
    out.offset = out.u;
    const QuadSurd p(out.slope);
    const QuadSurd qa(a);
    const QuadSurd qb(b);
    const QuadSurd qc(c);
    out.conjugated = {
        (qa * out.u * out.u + (qb - QuadSurd(1)) * out.u + qc) / p,
        QuadSurd(2) * qa * out.u + qb,
        qa * p,
    };
    if (out.u.is_rational()) {
        out.delta = Diffeomorphism::affine(out.slope, out.u.rational_part());
    }
    return out;
}

} // namespace compspec
