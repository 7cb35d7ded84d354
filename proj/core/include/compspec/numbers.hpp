#ifndef COMPSPEC_NUMBERS_HPP
#define COMPSPEC_NUMBERS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace compspec
{

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" (or "p") text.
std::string to_string(const Rational &q);

// Accepts "p", "p/q" and plain decimals such as "-1.25"; decimals are read
// as the exact rational they denote. Throws SyntaxError.
Rational parse_rational(std::string_view text);

Rational rational_pow(const Rational &base, unsigned long exp);
Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

// Arbitrary precision binary float (MPFR, round-to-nearest).
//
// Arithmetic results carry the larger of the operand precisions, so a
// default-constructed zero never lowers the working precision.
class BigFloat
{
public:
    BigFloat();
    BigFloat(long value, mpfr_prec_t prec);
    BigFloat(const Rational &q, mpfr_prec_t prec);
    BigFloat(const BigFloat &other);
    BigFloat(BigFloat &&other) noexcept;
    BigFloat &operator=(const BigFloat &other);
    BigFloat &operator=(BigFloat &&other) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t prec);
    // Correctly rounded value of a decimal/rational string.
    static BigFloat from_string(const std::string &text, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    BigFloat rounded(mpfr_prec_t prec) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // floor(log2 |x|) + 1, i.e. the binary exponent; meaningless for zero.
    long exponent() const { return mpfr_get_exp(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log2 |x| as a double, safe for huge or tiny magnitudes.
    double log2_abs() const;
    Rational to_rational() const;
    // Scientific notation with `digits` significant decimal digits.
    std::string to_string(int digits) const;
    std::string to_string() const;

    BigFloat &operator+=(const BigFloat &o);
    BigFloat &operator-=(const BigFloat &o);
    BigFloat &operator*=(const BigFloat &o);
    BigFloat &operator/=(const BigFloat &o);

    friend BigFloat operator+(const BigFloat &a, const BigFloat &b);
    friend BigFloat operator-(const BigFloat &a, const BigFloat &b);
    friend BigFloat operator*(const BigFloat &a, const BigFloat &b);
    friend BigFloat operator/(const BigFloat &a, const BigFloat &b);
    friend BigFloat operator-(const BigFloat &a);

    friend bool operator==(const BigFloat &a, const BigFloat &b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat &a, const BigFloat &b);

    friend BigFloat abs(const BigFloat &x);
    friend BigFloat sqrt(const BigFloat &x);
    friend BigFloat exp(const BigFloat &x);
    friend BigFloat log(const BigFloat &x);
    friend BigFloat atan(const BigFloat &x);
    friend BigFloat sin(const BigFloat &x);
    friend BigFloat cos(const BigFloat &x);
    friend BigFloat pow(const BigFloat &x, unsigned long n);
    // x * 2^e
    friend BigFloat ldexp(const BigFloat &x, long e);

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

private:
    struct Raw {};
    BigFloat(Raw, mpfr_prec_t prec);
    mpfr_t v_;
};

// 2^e at the given precision.
BigFloat pow2(long e, mpfr_prec_t prec);

// Exact complex rational a + b i.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(const Rational &r) : re(r), im(0) {}
    GaussRational(long r) : re(r), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }
    Rational norm() const { return re * re + im * im; }

    GaussRational &operator+=(const GaussRational &o);
    GaussRational &operator-=(const GaussRational &o);
    GaussRational &operator*=(const GaussRational &o);
    GaussRational &operator/=(const GaussRational &o);
    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
    friend GaussRational operator-(const GaussRational &a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRational &a, const GaussRational &b) { return a.re == b.re && a.im == b.im; }
};

std::string to_string(const GaussRational &z);
// Accepts "a", "a/b", decimals, "bi", "a+bi", "a-b/ci", "i", "-i".
GaussRational parse_gauss(std::string_view text);
GaussRational gauss_pow(const GaussRational &z, unsigned long n);

struct BigComplex {
    BigFloat re;
    BigFloat im;

    BigComplex() = default;
    BigComplex(BigFloat r) : re(std::move(r)) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(const GaussRational &z, mpfr_prec_t prec) : re(z.re, prec), im(z.im, prec) {}

    mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    BigComplex &operator+=(const BigComplex &o);
    BigComplex &operator-=(const BigComplex &o);
    BigComplex &operator*=(const BigComplex &o);
    BigComplex &operator/=(const BigComplex &o);
    friend BigComplex operator+(BigComplex a, const BigComplex &b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex &b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex &b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex &b) { return a /= b; }
    friend BigComplex operator-(const BigComplex &a) { return {-a.re, -a.im}; }
    friend bool operator==(const BigComplex &a, const BigComplex &b) { return a.re == b.re && a.im == b.im; }
};

BigFloat abs(const BigComplex &z);

// a + b*sqrt(d), d >= 0 rational and not the square of a rational (otherwise
// folded into a). The field operations require matching radicands unless one
// operand is rational.
class QuadSurd
{
public:
    QuadSurd() = default;
    QuadSurd(const Rational &a) : a_(a) {}
    QuadSurd(long a) : a_(a) {}
    QuadSurd(Rational a, Rational b, Rational d);

    static QuadSurd sqrt_of(const Rational &d) { return QuadSurd(0, 1, d); }

    const Rational &rational_part() const { return a_; }
    const Rational &surd_coeff() const { return b_; }
    const Rational &radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    int sign() const;
    QuadSurd conjugate() const { return QuadSurd(a_, -b_, d_); }
    // (a + b sqrt d)(a - b sqrt d)
    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

    BigFloat to_bigfloat(mpfr_prec_t prec) const;
    // Exact rational enclosure of width <= 2^-bits.
    std::pair<Rational, Rational> enclosure(unsigned bits) const;
    std::string to_string() const;

    QuadSurd &operator+=(const QuadSurd &o);
    QuadSurd &operator-=(const QuadSurd &o);
    QuadSurd &operator*=(const QuadSurd &o);
    QuadSurd &operator/=(const QuadSurd &o);
    friend QuadSurd operator+(QuadSurd a, const QuadSurd &b) { return a += b; }
    friend QuadSurd operator-(QuadSurd a, const QuadSurd &b) { return a -= b; }
    friend QuadSurd operator*(QuadSurd a, const QuadSurd &b) { return a *= b; }
    friend QuadSurd operator/(QuadSurd a, const QuadSurd &b) { return a /= b; }
    friend QuadSurd operator-(const QuadSurd &x) { return QuadSurd(-x.a_, -x.b_, x.d_); }
    friend bool operator==(const QuadSurd &x, const QuadSurd &y);
    friend std::strong_ordering operator<=>(const QuadSurd &x, const QuadSurd &y);

private:
    void normalize();
    void adopt_radicand(const QuadSurd &o);

    Rational a_{0};
    Rational b_{0};
    Rational d_{0};
};

QuadSurd abs(const QuadSurd &x);
QuadSurd surd_pow(const QuadSurd &x, unsigned long n);

// Rational square root when q is a perfect square of a rational.
bool rational_sqrt(const Rational &q, Rational &root);

// Best rational approximations of x with denominator <= max_den, in order of
// increasing denominator (continued-fraction convergents).
std::vector<Rational> convergents(const Rational &x, const Integer &max_den);

} // namespace compspec

#endif
