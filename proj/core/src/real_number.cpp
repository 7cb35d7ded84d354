#include <compspec/real_number.hpp>

#include <stdexcept>

namespace compspec
{

BigFloat RealValue::to_bigfloat(mpfr_prec_t prec) const
{
    if (is_exact()) {
        return BigFloat(rational(), prec);
    }
    return approx().rounded(prec);
}

std::string RealValue::to_string(int digits) const
{
    if (is_exact()) {
        return compspec::to_string(rational());
    }
    return approx().to_string(digits);
}

RealNumber::RealNumber(const QuadSurd &s)
{
    if (s.is_rational()) {
        v_ = s.rational_part();
    } else {
        v_ = s;
    }
}

RealNumber::RealNumber(const RealAlgebraic &a)
{
    if (a.is_rational()) {
        v_ = a.rational();
    } else {
        v_ = Image{a, Polynomial::identity()};
    }
}

RealNumber::RealNumber(RealAlgebraic alpha, Polynomial g)
{
    if (alpha.is_rational()) {
        v_ = g(alpha.rational());
    } else if (g.degree() <= 0) {
        v_ = g.coeff(0);
    } else {
        v_ = Image{std::move(alpha), std::move(g)};
    }
}

RealNumber RealNumber::enclosure(Rational lo, Rational hi)
{
    RealNumber r;
    if (lo == hi) {
        r.v_ = lo;
    } else {
        r.v_ = Enclosure{std::move(lo), std::move(hi)};
    }
    return r;
}

std::optional<Rational> RealNumber::as_rational() const
{
    if (kind() == Kind::rational) {
        return std::get<Rational>(v_);
    }
    return std::nullopt;
}

std::pair<Rational, Rational> RealNumber::enclose(unsigned bits) const
{
    switch (kind()) {
    case Kind::rational:
        return {std::get<Rational>(v_), std::get<Rational>(v_)};
    case Kind::surd:
        return surd().enclosure(bits);
    case Kind::algebraic: {
        const Image &im = image();
        RealAlgebraic a = im.alpha;
        Rational target(1);
        mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), bits);
        target.canonicalize();
        for (unsigned b = bits;; b += 16) {
            a.refine(b);
            if (a.is_rational()) {
                const Rational v = im.g(a.rational());
                return {v, v};
            }
            auto r = im.g.range(a.lo(), a.hi());
            if (r.second - r.first <= target || b > bits + 4096) {
                return r;
            }
        }
    }
    case Kind::enclosure:
        return {bounds().lo, bounds().hi};
    }
    throw std::logic_error("unreachable");
}

BigFloat RealNumber::to_bigfloat(mpfr_prec_t prec) const
{
    switch (kind()) {
    case Kind::rational:
        return BigFloat(std::get<Rational>(v_), prec);
    case Kind::surd:
        return surd().to_bigfloat(prec);
    default: {
        auto [lo, hi] = enclose(static_cast<unsigned>(prec) + 8);
        return BigFloat((lo + hi) / 2, prec);
    }
    }
}

std::optional<int> RealNumber::compare(const Rational &r) const
{
    switch (kind()) {
    case Kind::rational:
        return cmp(std::get<Rational>(v_), r);
    case Kind::surd:
        return (surd() - QuadSurd(r)).sign();
    case Kind::algebraic:
        return image().alpha.sign_of(image().g - Polynomial::constant(r));
    case Kind::enclosure:
        if (bounds().lo > r) {
            return 1;
        }
        if (bounds().hi < r) {
            return -1;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> RealNumber::compare_abs(const Rational &r) const
{
    const auto up = compare(r);
    const auto down = compare(-r);
    if (!up || !down) {
        // An enclosure may still decide via |x| bounds.
        if (kind() == Kind::enclosure) {
            const Rational lo = bounds().lo;
            const Rational hi = bounds().hi;
            const Rational amax = std::max(abs(lo), abs(hi));
            const Rational amin = (lo <= 0 && hi >= 0) ? Rational(0) : std::min(abs(lo), abs(hi));
            if (amin > r) {
                return 1;
            }
            if (amax < r) {
                return -1;
            }
        }
        return std::nullopt;
    }
    if (*up > 0 || *down < 0) {
        return 1;
    }
    if (*up == 0 || *down == 0) {
        return 0;
    }
    return -1;
}

RealNumber RealNumber::pow(unsigned long n) const
{
    switch (kind()) {
    case Kind::rational:
        return rational_pow(std::get<Rational>(v_), n);
    case Kind::surd:
        return surd_pow(surd(), n);
    case Kind::algebraic: {
        const Image &im = image();
        return RealNumber(im.alpha, im.g.pow(static_cast<unsigned>(n)));
    }
    case Kind::enclosure: {
        const Rational a = rational_pow(bounds().lo, n);
        const Rational b = rational_pow(bounds().hi, n);
        Rational lo = std::min(a, b);
        const Rational hi = std::max(a, b);
        if (n % 2 == 0 && bounds().lo < 0 && bounds().hi > 0) {
            lo = 0;
        }
        return enclosure(lo, hi);
    }
    }
    return *this;
}

RealNumber RealNumber::negated() const
{
    switch (kind()) {
    case Kind::rational:
        return Rational(-std::get<Rational>(v_));
    case Kind::surd:
        return -surd();
    case Kind::algebraic:
        return RealNumber(image().alpha, -image().g);
    case Kind::enclosure:
        return enclosure(-bounds().hi, -bounds().lo);
    }
    return *this;
}

std::string RealNumber::to_string() const
{
    switch (kind()) {
    case Kind::rational:
        return compspec::to_string(std::get<Rational>(v_));
    case Kind::surd:
        return surd().to_string();
    case Kind::algebraic: {
        const auto [lo, hi] = enclose(64);
        return "~" + BigFloat((lo + hi) / 2, 80).to_string(18);
    }
    case Kind::enclosure:
        return "[" + compspec::to_string(bounds().lo) + "," + compspec::to_string(bounds().hi) + "]";
    }
    return "?";
}

bool same_point(const RealNumber &a, const RealNumber &b)
{
    if (auto q = a.as_rational()) {
        if (b.is_exact()) {
            return b.compare(*q) == 0;
        }
        return b.compare(*q) == std::nullopt;
    }
    if (auto q = b.as_rational()) {
        return same_point(b, a);
    }
    auto [alo, ahi] = a.enclose(200);
    auto [blo, bhi] = b.enclose(200);
    return !(ahi < blo || bhi < alo);
}

} // namespace compspec
