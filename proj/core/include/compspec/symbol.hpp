#ifndef COMPSPEC_SYMBOL_HPP
#define COMPSPEC_SYMBOL_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <compspec/expression.hpp>
#include <compspec/interval.hpp>
#include <compspec/polynomial.hpp>
#include <compspec/real_number.hpp>
#include <compspec/truncated_series.hpp>

namespace compspec
{

class AnalyticSymbol;
class Diffeomorphism;

// How a symbol was built from another one. Classification of transcendental
// conjugates goes through the base symbol.
struct Provenance {
    enum class Kind { conjugate, inverse };
    Kind kind;
    std::shared_ptr<const AnalyticSymbol> base;
    std::shared_ptr<const Diffeomorphism> delta; // conjugate only
};

// Non-constant real analytic self-map phi of an open interval J.
class AnalyticSymbol
{
public:
    // Verifies non-constancy and phi(J) within J (exactly for polynomials,
    // on a sample grid otherwise). Throws ConstantSymbol / NotSelfMap.
    AnalyticSymbol(Expr body, Interval domain);
    static AnalyticSymbol from_polynomial(const Polynomial &p, Interval domain = Interval());

    const Expr &expr() const { return expr_; }
    bool is_polynomial() const { return poly_.has_value(); }
    const Polynomial &polynomial() const { return *poly_; }
    const Interval &domain() const { return domain_; }
    // False when self-map invariance rests on sampling.
    bool certified() const { return certified_; }
    std::string text() const;

    RealValue eval(const RealValue &x, mpfr_prec_t prec) const;
    BigFloat eval(const BigFloat &x) const;
    RealValue derivative(const RealValue &x, mpfr_prec_t prec) const;
    BigFloat derivative(const BigFloat &x) const;
    TruncatedSeries jet(const RealValue &center, std::size_t order, mpfr_prec_t prec) const;
    // phi^[n](x); OrbitEscape(k) when phi^[k](x) leaves J.
    RealValue iterate(unsigned long n, const RealValue &x, mpfr_prec_t prec) const;

    const Provenance *provenance() const { return provenance_.get(); }
    AnalyticSymbol with_provenance(Provenance p, bool certified) const;

private:
    AnalyticSymbol() = default;
    void check_in_domain(const RealValue &x) const;

    Expr expr_;
    std::optional<Polynomial> poly_;
    Interval domain_;
    bool certified_ = true;
    std::shared_ptr<const Provenance> provenance_;
};

// e(from) within `to`: exact for polynomials (returns true), sampled on a grid
// otherwise (returns false unless `to` is the real line). Throws NotSelfMap.
bool check_image_within(const Expr &e, const Interval &from, const Interval &to);

AnalyticSymbol parse_symbol(std::string_view text, const Interval &domain = Interval());
// Constants allowed; used for right-hand sides gamma.
Expr parse_function(std::string_view text);

// Analytic diffeomorphism delta of an open interval onto another one.
class Diffeomorphism
{
public:
    // Verifies that delta' keeps one sign (Sturm for polynomials, sampled
    // otherwise) and computes the image interval from the end limits.
    // Non-affine maps must be onto the real line from the real line.
    Diffeomorphism(Expr forward, Interval domain);
    static Diffeomorphism identity(Interval domain = Interval());
    static Diffeomorphism affine(const Rational &slope, const Rational &offset);
    static Diffeomorphism parse(std::string_view text, const Interval &domain = Interval());

    const Expr &forward() const { return fwd_; }
    const Expr &inverse_expr() const { return inv_; }
    bool is_affine() const { return fwd_poly_ && fwd_poly_->degree() == 1; }
    const std::optional<Polynomial> &forward_polynomial() const { return fwd_poly_; }
    const std::optional<Polynomial> &inverse_polynomial() const { return inv_poly_; }
    bool closed_form_inverse() const { return inv_poly_.has_value(); }
    const Interval &domain() const { return domain_; }
    const Interval &codomain() const { return codomain_; }
    int orientation() const { return mono_; }
    bool certified() const { return certified_; }
    std::string text() const { return to_string(fwd_); }

    RealValue apply(const RealValue &x, mpfr_prec_t prec) const;
    RealValue apply_inverse(const RealValue &y, mpfr_prec_t prec) const;
    Diffeomorphism inverse() const;

private:
    Diffeomorphism() = default;

    Expr fwd_;
    Expr inv_;
    std::optional<Polynomial> fwd_poly_;
    std::optional<Polynomial> inv_poly_;
    Interval domain_;
    Interval codomain_;
    int mono_ = 1;
    bool certified_ = true;
};

// psi = delta^{-1} o phi o delta on delta^{-1}(J). Requires delta onto J.
AnalyticSymbol conjugate(const AnalyticSymbol &phi, const Diffeomorphism &delta);
// phi^{-1} for a diffeomorphism phi of J onto J. Throws NotADiffeomorphism.
AnalyticSymbol inverse_symbol(const AnalyticSymbol &phi);

// Normal form of phi(x) = a x^2 + b x + c: with D = (b-1)^2 - 4ac >= 0 the
// fixed points are u = (1-b+sqrt D)/(2a), v = (1-b-sqrt D)/(2a), and
// delta(x) = slope*x + offset (slope = -1/a, offset = u) conjugates phi to
// -x^2 + mu x with mu = 1 + a(u - v) = 1 + sqrt D.
struct QuadraticNormalForm {
    bool has_fixed_points = false;
    QuadSurd mu;
    QuadSurd u;
    QuadSurd v;
    Rational slope;
    QuadSurd offset;
    // delta as an object when its offset is rational.
    std::optional<Diffeomorphism> delta;
    // Coefficients of delta^{-1} o phi o delta, computed exactly.
    std::vector<QuadSurd> conjugated;
};

QuadraticNormalForm normalize_quadratic(const Rational &a, const Rational &b, const Rational &c);

} // namespace compspec

#endif
