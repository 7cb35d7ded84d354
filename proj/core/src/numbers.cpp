#include <compspec/numbers.hpp>

#include <cctype>
#include <cmath>
#include <utility>

#include <compspec/errors.hpp>

namespace compspec
{

std::string to_string(const Rational &q)
{
    return q.get_str();
}

namespace
{

bool is_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) {
            throw SyntaxError(0, "malformed rational '" + std::string(text) + "'");
        }
        Integer d(std::string(den), 10);
        if (d == 0) {
            throw SyntaxError(slash + 1, "zero denominator in '" + std::string(text) + "'");
        }
        out = Rational(Integer(std::string(num), 10), d);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto ip = s.substr(0, dot);
        const auto fp = s.substr(dot + 1);
        if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) || (ip.empty() && fp.empty())) {
            throw SyntaxError(0, "malformed decimal '" + std::string(text) + "'");
        }
        Integer num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        out = Rational(num, den);
    } else {
        if (!is_digits(s)) {
            throw SyntaxError(0, "malformed number '" + std::string(text) + "'");
        }
        out = Rational(Integer(std::string(s), 10));
    }
    out.canonicalize();
    return neg ? Rational(-out) : out;
}

Rational rational_pow(const Rational &base, unsigned long exp)
{
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    out.canonicalize();
    return out;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat()
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(Raw, mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
}

BigFloat::BigFloat(long value, mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational &q, mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat &other)
{
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat &&other) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigFloat &BigFloat::operator=(const BigFloat &other)
{
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat &BigFloat::operator=(BigFloat &&other) noexcept
{
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(v_);
}

BigFloat BigFloat::pi(mpfr_prec_t prec)
{
    BigFloat out(BigFloat::Raw{}, prec);
    mpfr_const_pi(out.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::from_string(const std::string &text, mpfr_prec_t prec)
{
    BigFloat out(BigFloat::Raw{}, prec);
    if (mpfr_set_str(out.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw SyntaxError(0, "malformed float '" + text + "'");
    }
    return out;
}

BigFloat BigFloat::rounded(mpfr_prec_t prec) const
{
    BigFloat out(BigFloat::Raw{}, prec);
    mpfr_set(out.v_, v_, MPFR_RNDN);
    return out;
}

double BigFloat::log2_abs() const
{
    if (is_zero()) {
        return -HUGE_VAL;
    }
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Rational BigFloat::to_rational() const
{
    Rational out;
    mpfr_get_q(out.get_mpq_t(), v_);
    return out;
}

std::string BigFloat::to_string(int digits) const
{
    if (is_zero()) {
        return "0";
    }
    char *buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string BigFloat::to_string() const
{
    // Decimal digits that faithfully represent the binary precision.
    const auto digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 1;
    return to_string(std::max(digits, 2));
}

#define COMPSPEC_BINOP(op, fn)                                                                                       \
    BigFloat operator op(const BigFloat &a, const BigFloat &b)                                                      \
    {                                                                                                                \
        BigFloat out(BigFloat::Raw{}, std::max(a.precision(), b.precision()));                                                     \
        fn(out.v_, a.v_, b.v_, MPFR_RNDN);                                                                           \
        return out;                                                                                                  \
    }

COMPSPEC_BINOP(+, mpfr_add)
COMPSPEC_BINOP(-, mpfr_sub)
COMPSPEC_BINOP(*, mpfr_mul)
COMPSPEC_BINOP(/, mpfr_div)

#undef COMPSPEC_BINOP

BigFloat &BigFloat::operator+=(const BigFloat &o)
{
    return *this = *this + o;
}
BigFloat &BigFloat::operator-=(const BigFloat &o)
{
    return *this = *this - o;
}
BigFloat &BigFloat::operator*=(const BigFloat &o)
{
    return *this = *this * o;
}
BigFloat &BigFloat::operator/=(const BigFloat &o)
{
    return *this = *this / o;
}

BigFloat operator-(const BigFloat &a)
{
    BigFloat out(BigFloat::Raw{}, a.precision());
    mpfr_neg(out.v_, a.v_, MPFR_RNDN);
    return out;
}

std::partial_ordering operator<=>(const BigFloat &a, const BigFloat &b)
{
    if (mpfr_unordered_p(a.v_, b.v_) != 0) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define COMPSPEC_UNARY(name, fn)                                                                                     \
    BigFloat name(const BigFloat &x)                                                                                \
    {                                                                                                                \
        BigFloat out(BigFloat::Raw{}, x.precision());                                                                              \
        fn(out.v_, x.v_, MPFR_RNDN);                                                                                 \
        return out;                                                                                                  \
    }

COMPSPEC_UNARY(abs, mpfr_abs)
COMPSPEC_UNARY(sqrt, mpfr_sqrt)
COMPSPEC_UNARY(exp, mpfr_exp)
COMPSPEC_UNARY(log, mpfr_log)
COMPSPEC_UNARY(atan, mpfr_atan)
COMPSPEC_UNARY(sin, mpfr_sin)
COMPSPEC_UNARY(cos, mpfr_cos)

#undef COMPSPEC_UNARY

BigFloat pow(const BigFloat &x, unsigned long n)
{
    BigFloat out(BigFloat::Raw{}, x.precision());
    mpfr_pow_ui(out.v_, x.v_, n, MPFR_RNDN);
    return out;
}

BigFloat ldexp(const BigFloat &x, long e)
{
    BigFloat out(BigFloat::Raw{}, x.precision());
    mpfr_mul_2si(out.v_, x.v_, e, MPFR_RNDN);
    return out;
}

BigFloat pow2(long e, mpfr_prec_t prec)
{
    return ldexp(BigFloat(1, prec), e);
}

// ------------------------------------------------------------ GaussRational

GaussRational &GaussRational::operator+=(const GaussRational &o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussRational &GaussRational::operator-=(const GaussRational &o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRational &GaussRational::operator*=(const GaussRational &o)
{
    if (im == 0 && o.im == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRational &GaussRational::operator/=(const GaussRational &o)
{
    if (o.is_zero()) {
        throw std::domain_error("division by zero");
    }
    if (o.im == 0) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    const Rational n = o.norm();
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string to_string(const GaussRational &z)
{
    if (z.im == 0) {
        return to_string(z.re);
    }
    std::string out;
    if (z.re != 0) {
        out = to_string(z.re);
        out += z.im < 0 ? "-" : "+";
    } else if (z.im < 0) {
        out = "-";
    }
    const Rational a = abs(z.im);
    if (a != 1) {
        out += to_string(a);
    }
    out += "i";
    return out;
}

GaussRational parse_gauss(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw SyntaxError(0, "empty complex number");
    }
    if (s.back() != 'i') {
        return GaussRational(parse_rational(s));
    }
    s.pop_back();
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+") {
        im_part = "1";
    } else if (im_part == "-") {
        im_part = "-1";
    }
    GaussRational out;
    out.re = re_part.empty() ? Rational(0) : parse_rational(re_part);
    out.im = parse_rational(im_part);
    return out;
}

GaussRational gauss_pow(const GaussRational &z, unsigned long n)
{
    if (z.is_real()) {
        return GaussRational(rational_pow(z.re, n));
    }
    GaussRational out(1);
    GaussRational b = z;
    while (n != 0) {
        if ((n & 1UL) != 0) {
            out *= b;
        }
        n >>= 1U;
        if (n != 0) {
            b *= b;
        }
    }
    return out;
}

// --------------------------------------------------------------- BigComplex

BigComplex &BigComplex::operator+=(const BigComplex &o)
{
    re += o.re;
    im += o.im;
    return *this;
}

BigComplex &BigComplex::operator-=(const BigComplex &o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

BigComplex &BigComplex::operator*=(const BigComplex &o)
{
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

BigComplex &BigComplex::operator/=(const BigComplex &o)
{
    if (o.im.is_zero()) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    const BigFloat n = o.re * o.re + o.im * o.im;
    BigFloat r = (re * o.re + im * o.im) / n;
    BigFloat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

BigFloat abs(const BigComplex &z)
{
    if (z.im.is_zero()) {
        return abs(z.re);
    }
    return sqrt(z.re * z.re + z.im * z.im);
}

// ----------------------------------------------------------------- QuadSurd

bool rational_sqrt(const Rational &q, Rational &root)
{
    if (q < 0) {
        return false;
    }
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
        return false;
    }
    Integer n;
    Integer d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

QuadSurd::QuadSurd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d))
{
    if (d_ < 0) {
        throw std::domain_error("negative radicand");
    }
    normalize();
}

void QuadSurd::normalize()
{
    if (b_ == 0 || d_ == 0) {
        b_ = 0;
        d_ = 0;
        return;
    }
    Rational r;
    if (rational_sqrt(d_, r)) {
        a_ += b_ * r;
        b_ = 0;
        d_ = 0;
    }
}

void QuadSurd::adopt_radicand(const QuadSurd &o)
{
    if (o.b_ == 0) {
        return;
    }
    if (b_ == 0) {
        d_ = o.d_;
        return;
    }
    if (d_ != o.d_) {
        throw std::domain_error("QuadSurd radicands differ");
    }
}

int QuadSurd::sign() const
{
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) {
        return sa;
    }
    if (sa == 0 || sa == sb) {
        return sb;
    }
    // Opposite signs: compare a^2 with b^2 d.
    const int c = cmp(a_ * a_, b_ * b_ * d_);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

BigFloat QuadSurd::to_bigfloat(mpfr_prec_t prec) const
{
    BigFloat out(a_, prec + 8);
    if (b_ != 0) {
        out += BigFloat(b_, prec + 8) * sqrt(BigFloat(d_, prec + 8));
    }
    return out.rounded(prec);
}

std::pair<Rational, Rational> QuadSurd::enclosure(unsigned bits) const
{
    if (b_ == 0) {
        return {a_, a_};
    }
    // floor(sqrt(d * 4^k)) / 2^k brackets sqrt(d) within 2^-k.
    const unsigned k = bits + 4 + static_cast<unsigned>(mpz_sizeinbase(b_.get_num_mpz_t(), 2));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
    const Rational scaled = d_ * Rational(scale * scale);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Integer root;
    mpz_sqrt(root.get_mpz_t(), fl.get_mpz_t());
    Rational lo_s(root, scale);
    Rational hi_s(Integer(root + 1), scale);
    lo_s.canonicalize();
    hi_s.canonicalize();
    Rational lo = a_ + b_ * lo_s;
    Rational hi = a_ + b_ * hi_s;
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return {lo, hi};
}

std::string QuadSurd::to_string() const
{
    if (b_ == 0) {
        return compspec::to_string(a_);
    }
    std::string out;
    if (a_ != 0) {
        out = compspec::to_string(a_) + (b_ < 0 ? "-" : "+");
    } else if (b_ < 0) {
        out = "-";
    }
    const Rational ab = abs(b_);
    if (ab != 1) {
        out += compspec::to_string(ab) + "*";
    }
    out += "sqrt(" + compspec::to_string(d_) + ")";
    return out;
}

QuadSurd &QuadSurd::operator+=(const QuadSurd &o)
{
    adopt_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
}

QuadSurd &QuadSurd::operator-=(const QuadSurd &o)
{
    adopt_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
}

QuadSurd &QuadSurd::operator*=(const QuadSurd &o)
{
    adopt_radicand(o);
    const Rational d = b_ != 0 ? d_ : o.d_;
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
}

QuadSurd &QuadSurd::operator/=(const QuadSurd &o)
{
    const Rational n = o.norm();
    if (n == 0) {
        throw std::domain_error("QuadSurd division by zero");
    }
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    normalize();
    return *this;
}

bool operator==(const QuadSurd &x, const QuadSurd &y)
{
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
}

std::strong_ordering operator<=>(const QuadSurd &x, const QuadSurd &y)
{
    int s = 0;
    if (x.b_ == 0 || y.b_ == 0 || x.d_ == y.d_) {
        s = (x - y).sign();
    } else {
        // Different radicands: compare through enclosures until separated.
        for (unsigned bits = 64;; bits *= 2) {
            const auto [xl, xh] = x.enclosure(bits);
            const auto [yl, yh] = y.enclosure(bits);
            if (xh < yl) {
                s = -1;
                break;
            }
            if (yh < xl) {
                s = 1;
                break;
            }
        }
    }
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

QuadSurd abs(const QuadSurd &x)
{
    return x.sign() < 0 ? -x : x;
}

QuadSurd surd_pow(const QuadSurd &x, unsigned long n)
{
    QuadSurd out(1);
    QuadSurd b = x;
    while (n != 0) {
        if ((n & 1UL) != 0) {
            out *= b;
        }
        n >>= 1U;
        if (n != 0) {
            b *= b;
        }
    }
    return out;
}

std::vector<Rational> convergents(const Rational &x, const Integer &max_den)
{
    std::vector<Rational> out;
    Integer p0 = 0;
    Integer q0 = 1;
    Integer p1 = 1;
    Integer q1 = 0;
    Integer num = x.get_num();
    Integer den = x.get_den();
    while (den != 0) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Integer p2 = a * p1 + p0;
        Integer q2 = a * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        Rational c(p2, q2);
        c.canonicalize();
        out.push_back(c);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Integer r = num - a * den;
        num = den;
        den = r;
    }
    return out;
}

} // namespace compspec
