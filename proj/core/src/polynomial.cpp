#include <compspec/polynomial.hpp>

#include <algorithm>
#include <stdexcept>

#include <compspec/errors.hpp>

namespace compspec
{

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    for (auto &c : c_) {
        c.canonicalize();
    }
    trim();
}

Polynomial Polynomial::monomial(const Rational &c, unsigned degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Rational Polynomial::operator()(const Rational &x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

BigFloat Polynomial::operator()(const BigFloat &x) const
{
    BigFloat acc(0, x.precision());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + BigFloat(*it, x.precision());
    }
    return acc;
}

BigComplex Polynomial::operator()(const BigComplex &x) const
{
    const auto prec = x.precision();
    BigComplex acc(BigFloat(0, prec), BigFloat(0, prec));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + BigComplex(BigFloat(*it, prec), BigFloat(0, prec));
    }
    return acc;
}

QuadSurd Polynomial::operator()(const QuadSurd &x) const
{
    QuadSurd acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + QuadSurd(*it);
    }
    return acc;
}

std::pair<Rational, Rational> Polynomial::range(const Rational &lo, const Rational &hi) const
{
    // Interval Horner scheme.
    Rational a = 0;
    Rational b = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const Rational p1 = a * lo;
        const Rational p2 = a * hi;
        const Rational p3 = b * lo;
        const Rational p4 = b * hi;
        a = std::min({p1, p2, p3, p4}) + *it;
        b = std::max({p1, p2, p3, p4}) + *it;
    }
    return {a, b};
}

Polynomial Polynomial::derivative() const
{
    if (c_.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) {
        d[k - 1] = c_[k] * static_cast<long>(k);
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::compose(const Polynomial &inner) const
{
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * inner + Polynomial::constant(*it);
    }
    return acc;
}

Polynomial Polynomial::pow(unsigned n) const
{
    Polynomial out = constant(1);
    Polynomial b = *this;
    while (n != 0) {
        if ((n & 1U) != 0) {
            out *= b;
        }
        n >>= 1U;
        if (n != 0) {
            b *= b;
        }
    }
    return out;
}

Polynomial Polynomial::shift(const Rational &c) const
{
    return compose(Polynomial({c, Rational(1)}));
}

Polynomial Polynomial::monic() const
{
    if (c_.empty()) {
        return {};
    }
    Polynomial out = *this;
    out *= Rational(1) / leading();
    return out;
}

Polynomial Polynomial::primitive() const
{
    if (c_.empty()) {
        return {};
    }
    Integer l = 1;
    for (const auto &c : c_) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto &c : c_) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    if (ints.back() < 0) {
        g = -g;
    }
    std::vector<Rational> out;
    out.reserve(ints.size());
    for (auto &v : ints) {
        out.emplace_back(Integer(v / g));
    }
    return Polynomial(std::move(out));
}

int Polynomial::sign_at_pos_inf() const
{
    return c_.empty() ? 0 : sgn(leading());
}

int Polynomial::sign_at_neg_inf() const
{
    if (c_.empty()) {
        return 0;
    }
    const int s = sgn(leading());
    return (degree() % 2 == 0) ? s : -s;
}

ExtRational Polynomial::limit(const ExtRational &x) const
{
    if (x.is_finite()) {
        return (*this)(x.value());
    }
    if (degree() <= 0) {
        return coeff(0);
    }
    const int s = x.kind() == ExtRational::Kind::pos_inf ? sign_at_pos_inf() : sign_at_neg_inf();
    return s > 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
}

std::string Polynomial::to_string() const
{
    if (c_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational &c = c_[k];
        if (c == 0) {
            continue;
        }
        const Rational a = abs(c);
        if (out.empty()) {
            if (c < 0) {
                out += "-";
            }
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (k == 0) {
            out += compspec::to_string(a);
            continue;
        }
        if (a != 1) {
            out += compspec::to_string(a) + "*";
        }
        out += "x";
        if (k > 1) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
    if (o.c_.size() > c_.size()) {
        c_.resize(o.c_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
        c_[k] += o.c_[k];
    }
    trim();
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
    if (o.c_.size() > c_.size()) {
        c_.resize(o.c_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
        c_[k] -= o.c_[k];
    }
    trim();
    return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &o)
{
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Polynomial &Polynomial::operator*=(const Rational &s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto &c : c_) {
        c *= s;
    }
    return *this;
}

Polynomial operator-(const Polynomial &a)
{
    Polynomial out = a;
    out *= Rational(-1);
    return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial &a, const Polynomial &b)
{
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {Polynomial(), a};
    }
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    const Rational inv = Rational(1) / b.leading();
    for (int k = a.degree(); k >= db; --k) {
        const Rational f = r[static_cast<std::size_t>(k)] * inv;
        q[static_cast<std::size_t>(k - db)] = f;
        if (f == 0) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial gcd(const Polynomial &a, const Polynomial &b)
{
    Polynomial x = a.primitive();
    Polynomial y = b.primitive();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second.primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Polynomial squarefree_part(const Polynomial &p)
{
    if (p.degree() <= 0) {
        return p.primitive();
    }
    const Polynomial g = gcd(p, p.derivative());
    return divmod(p, g).first.primitive();
}

// ------------------------------------------------------------------- Sturm

SturmSequence::SturmSequence(const Polynomial &squarefree)
{
    seq_.push_back(squarefree.primitive());
    if (squarefree.degree() <= 0) {
        return;
    }
    seq_.push_back(seq_.front().derivative().primitive());
    while (seq_.back().degree() > 0) {
        Polynomial r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.is_zero()) {
            break;
        }
        // Only the sign matters; keep coefficients small.
        Polynomial neg = -r;
        Polynomial prim = neg.primitive();
        if (sgn(prim.leading()) != sgn(neg.leading())) {
            prim = -prim;
        }
        seq_.push_back(std::move(prim));
    }
}

int SturmSequence::variations(const ExtRational &x) const
{
    int changes = 0;
    int last = 0;
    for (const auto &p : seq_) {
        int s = 0;
        switch (x.kind()) {
        case ExtRational::Kind::pos_inf:
            s = p.sign_at_pos_inf();
            break;
        case ExtRational::Kind::neg_inf:
            s = p.sign_at_neg_inf();
            break;
        default:
            s = sgn(p(x.value()));
        }
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

int SturmSequence::count(const Interval &open) const
{
    if (base().degree() <= 0) {
        return 0;
    }
    int n = variations(open.lower()) - variations(open.upper());
    if (open.upper().is_finite() && base()(open.upper().value()) == 0) {
        --n;
    }
    return n;
}

int SturmSequence::count(const Rational &lo, const Rational &hi) const
{
    return count(Interval(lo, hi));
}

namespace
{

Rational cauchy_bound(const Polynomial &p)
{
    Rational m = 0;
    const Rational lead = abs(p.leading());
    for (int k = 0; k < p.degree(); ++k) {
        m = std::max(m, Rational(abs(p.coeffs()[static_cast<std::size_t>(k)]) / lead));
    }
    return m + 1;
}

void isolate(const SturmSequence &s, const Rational &lo, const Rational &hi, int n, std::vector<RootEnclosure> &out)
{
    if (n == 0) {
        return;
    }
    if (n == 1) {
        out.push_back({lo, hi});
        return;
    }
    const Rational mid = simplest_between(lo, hi);
    const bool mid_root = s.base()(mid) == 0;
    const int left = s.count(lo, mid);
    isolate(s, lo, mid, left, out);
    if (mid_root) {
        out.push_back({mid, mid});
    }
    isolate(s, mid, hi, n - left - (mid_root ? 1 : 0), out);
}

} // namespace

std::vector<RootEnclosure> isolate_roots(const Polynomial &p, const Interval &where)
{
    std::vector<RootEnclosure> out;
    if (p.degree() <= 0) {
        return out;
    }
    const Polynomial q = squarefree_part(p);
    const SturmSequence s(q);
    const int n = s.count(where);
    if (n == 0) {
        return out;
    }
    const Rational b = cauchy_bound(q);
    const Rational lo = where.lower().is_finite() ? where.lower().value() : Rational(-b);
    const Rational hi = where.upper().is_finite() ? where.upper().value() : b;
    isolate(s, lo, hi, n, out);
    // Exact rational roots are recognized eagerly: shrink each enclosure until
    // it can hold at most one rational with denominator dividing the leading
    // coefficient, then test that candidate.
    const Integer lead = abs(q.leading().get_num());
    for (auto &r : out) {
        if (r.exact()) {
            continue;
        }
        RealAlgebraic a(q, r.lo, r.hi);
        a.refine(static_cast<unsigned>(mpz_sizeinbase(Integer(lead * lead * 4).get_mpz_t(), 2)) + 1);
        if (!a.is_rational()) {
            const Rational c = simplest_between(a.lo(), a.hi());
            if (q(c) == 0) {
                a = RealAlgebraic(c);
            }
        }
        if (a.is_rational()) {
            r = {a.rational(), a.rational()};
        }
    }
    return out;
}

Rational simplest_between(const Rational &lo, const Rational &hi)
{
    if (!(lo < hi)) {
        throw std::invalid_argument("simplest_between: empty interval");
    }
    if (lo < 0 && hi > 0) {
        return 0;
    }
    if (hi <= 0) {
        return -simplest_between(-hi, -lo);
    }
    // 0 <= lo < hi: Stern-Brocot descent via continued fractions.
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    const Rational cand = Rational(fl + 1);
    if (cand < hi) {
        return cand;
    }
    // fl <= lo < hi <= fl + 1
    if (Rational(fl) == lo) {
        // Need something in (fl, hi): fl + 1/(k) with the simplest choice.
        const Rational rest = hi - Rational(fl);
        // simplest in (0, rest) is 1/ceil(1/rest + eps)
        Rational inv = 1 / rest;
        Integer c;
        mpz_fdiv_q(c.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
        c += 1;
        Rational out = Rational(fl) + Rational(1) / Rational(c);
        out.canonicalize();
        return out;
    }
    const Rational lo_f = lo - Rational(fl);
    const Rational hi_f = hi - Rational(fl);
    // In (lo_f, hi_f) within (0, 1]: take reciprocals.
    const Rational inner = simplest_between(1 / hi_f, 1 / lo_f);
    Rational out = Rational(fl) + 1 / inner;
    out.canonicalize();
    return out;
}

// ----------------------------------------------------------- RealAlgebraic

RealAlgebraic::RealAlgebraic(Polynomial squarefree, Rational lo, Rational hi)
    : poly_(std::move(squarefree)), lo_(std::move(lo)), hi_(std::move(hi))
{
    if (lo_ > hi_) {
        throw std::invalid_argument("RealAlgebraic: lo > hi");
    }
    if (lo_ == hi_) {
        poly_ = Polynomial({-lo_, Rational(1)});
    }
}

void RealAlgebraic::refine(unsigned bits)
{
    if (is_rational()) {
        return;
    }
    Rational target(1);
    mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), bits);
    target.canonicalize();
    int slo = sgn(poly_(lo_));
    while (hi_ - lo_ >= target) {
        const Rational mid = (lo_ + hi_) / 2;
        const int sm = sgn(poly_(mid));
        if (sm == 0) {
            *this = RealAlgebraic(mid);
            return;
        }
        if (slo == 0) {
            // lo itself is a root of the defining polynomial but not the
            // isolated one; use a Sturm count instead of signs.
            const SturmSequence s(poly_);
            if (s.count(lo_, mid) == 1) {
                hi_ = mid;
            } else {
                lo_ = mid;
                slo = sm;
            }
            continue;
        }
        if (sm == slo) {
            lo_ = mid;
        } else {
            hi_ = mid;
        }
    }
}

bool RealAlgebraic::is_root_of(const Polynomial &q) const
{
    if (is_rational()) {
        return q(lo_) == 0;
    }
    const Polynomial g = gcd(poly_, q);
    if (g.degree() <= 0) {
        return false;
    }
    return SturmSequence(squarefree_part(g)).count(lo_, hi_) == 1;
}

int RealAlgebraic::sign_of(const Polynomial &q) const
{
    if (is_rational()) {
        return sgn(q(lo_));
    }
    if (is_root_of(q)) {
        return 0;
    }
    RealAlgebraic r = *this;
    for (unsigned bits = 16;; bits *= 2) {
        r.refine(bits);
        if (r.is_rational()) {
            return sgn(q(r.lo_));
        }
        const auto [a, b] = q.range(r.lo_, r.hi_);
        if (a > 0) {
            return 1;
        }
        if (b < 0) {
            return -1;
        }
    }
}

BigFloat RealAlgebraic::to_bigfloat(mpfr_prec_t prec) const
{
    RealAlgebraic r = *this;
    r.refine(static_cast<unsigned>(prec) + 8);
    return BigFloat((r.lo_ + r.hi_) / 2, prec);
}

std::string RealAlgebraic::to_string() const
{
    if (is_rational()) {
        return compspec::to_string(lo_);
    }
    return "root of " + poly_.to_string() + " in (" + compspec::to_string(lo_) + "," + compspec::to_string(hi_) + ")";
}

bool operator==(const RealAlgebraic &a, const RealAlgebraic &b)
{
    if (a.is_rational() && b.is_rational()) {
        return a.lo_ == b.lo_;
    }
    if (a.is_rational()) {
        return b.is_root_of(Polynomial({-a.lo_, Rational(1)}));
    }
    if (b.is_rational()) {
        return a.is_root_of(Polynomial({-b.lo_, Rational(1)}));
    }
    // Common root inside the overlap of both enclosures.
    const Rational lo = std::max(a.lo_, b.lo_);
    const Rational hi = std::min(a.hi_, b.hi_);
    if (!(lo < hi)) {
        return false;
    }
    const Polynomial g = gcd(a.poly_, b.poly_);
    if (g.degree() <= 0) {
        return false;
    }
    return SturmSequence(squarefree_part(g)).count(lo, hi) == 1 && a.is_root_of(g) && b.is_root_of(g);
}

} // namespace compspec
