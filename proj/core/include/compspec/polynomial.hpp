#ifndef COMPSPEC_POLYNOMIAL_HPP
#define COMPSPEC_POLYNOMIAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <compspec/interval.hpp>
#include <compspec/numbers.hpp>

namespace compspec
{

// Dense univariate polynomial with exact rational coefficients, ascending
// degree. The coefficient vector never carries trailing zeros.
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

    static Polynomial constant(const Rational &c) { return Polynomial({c}); }
    static Polynomial identity() { return Polynomial({Rational(0), Rational(1)}); }
    static Polynomial monomial(const Rational &c, unsigned degree);

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational> &coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational &leading() const { return c_.back(); }

    Rational operator()(const Rational &x) const;
    BigFloat operator()(const BigFloat &x) const;
    BigComplex operator()(const BigComplex &x) const;
    QuadSurd operator()(const QuadSurd &x) const;
    // Enclosure of the range over the closed rational box [lo, hi].
    std::pair<Rational, Rational> range(const Rational &lo, const Rational &hi) const;

    Polynomial derivative() const;
    Polynomial compose(const Polynomial &inner) const;
    Polynomial pow(unsigned n) const;
    // p(x + c)
    Polynomial shift(const Rational &c) const;
    Polynomial monic() const;
    // Integer coefficients with unit content and positive leading coefficient.
    Polynomial primitive() const;

    // Sign of p(x) as x -> +inf / -inf.
    int sign_at_pos_inf() const;
    int sign_at_neg_inf() const;
    // Limit of p at a (possibly infinite) point.
    ExtRational limit(const ExtRational &x) const;

    std::string to_string() const;

    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Polynomial &o);
    Polynomial &operator*=(const Rational &s);
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial &b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational &s) { return a *= s; }
    friend Polynomial operator*(const Rational &s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(const Polynomial &a);
    friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

// Quotient and remainder of a / b (b nonzero).
std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial &a, const Polynomial &b);
// p / gcd(p, p'), made primitive.
Polynomial squarefree_part(const Polynomial &p);

// Sturm sequence of a squarefree polynomial.
class SturmSequence
{
public:
    explicit SturmSequence(const Polynomial &squarefree);

    const Polynomial &base() const { return seq_.front(); }
    int variations(const ExtRational &x) const;
    // Distinct roots in the open interval.
    int count(const Interval &open) const;
    int count(const Rational &lo, const Rational &hi) const;

private:
    std::vector<Polynomial> seq_;
};

// Isolating interval of one real root: either exact (lo == hi, a rational
// root) or an open interval (lo, hi) containing exactly one root of the
// defining squarefree polynomial, which changes sign across it.
struct RootEnclosure {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

// Distinct real roots of p in the open interval, in increasing order.
std::vector<RootEnclosure> isolate_roots(const Polynomial &p, const Interval &where);

// Simplest rational (smallest denominator) strictly between lo and hi.
Rational simplest_between(const Rational &lo, const Rational &hi);

// Real algebraic number: a rational, or the unique root of a squarefree
// polynomial inside an isolating open interval.
class RealAlgebraic
{
public:
    RealAlgebraic() = default;
    RealAlgebraic(const Rational &q) : poly_({-q, Rational(1)}), lo_(q), hi_(q) {}
    RealAlgebraic(Polynomial squarefree, Rational lo, Rational hi);

    bool is_rational() const { return lo_ == hi_; }
    const Rational &rational() const { return lo_; }
    const Polynomial &poly() const { return poly_; }
    const Rational &lo() const { return lo_; }
    const Rational &hi() const { return hi_; }

    // Halve the isolating interval until its width is below 2^-bits. Exact
    // rational roots met on the way collapse the enclosure.
    void refine(unsigned bits);
    // True iff the number is a root of q (exact, via gcd).
    bool is_root_of(const Polynomial &q) const;
    int sign_of(const Polynomial &q) const;
    BigFloat to_bigfloat(mpfr_prec_t prec) const;
    std::string to_string() const;

    friend bool operator==(const RealAlgebraic &a, const RealAlgebraic &b);

private:
    Polynomial poly_;
    Rational lo_{0};
    Rational hi_{0};
};

} // namespace compspec

#endif
