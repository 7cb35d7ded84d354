#include <compspec/expression.hpp>

#include <cctype>

#include <compspec/errors.hpp>
#include <compspec/power_series.hpp>

namespace compspec
{

namespace expr
{

namespace
{

Expr make(Node n)
{
    return std::make_shared<const Node>(std::move(n));
}

Expr unary(Node::Kind k, Expr a)
{
    Node n;
    n.kind = k;
    n.lhs = std::move(a);
    return make(std::move(n));
}

Expr binary(Node::Kind k, Expr a, Expr b)
{
    Node n;
    n.kind = k;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return make(std::move(n));
}

} // namespace

Expr constant(const Rational &q)
{
    Node n;
    n.kind = Node::Kind::constant;
    n.value = q;
    return make(std::move(n));
}

Expr variable()
{
    Node n;
    n.kind = Node::Kind::variable;
    return make(std::move(n));
}

Expr add(Expr a, Expr b) { return binary(Node::Kind::add, std::move(a), std::move(b)); }
Expr sub(Expr a, Expr b) { return binary(Node::Kind::sub, std::move(a), std::move(b)); }
Expr mul(Expr a, Expr b) { return binary(Node::Kind::mul, std::move(a), std::move(b)); }
Expr neg(Expr a) { return unary(Node::Kind::neg, std::move(a)); }
Expr exp(Expr a) { return unary(Node::Kind::exp, std::move(a)); }
Expr arctan(Expr a) { return unary(Node::Kind::arctan, std::move(a)); }
Expr sin(Expr a) { return unary(Node::Kind::sin, std::move(a)); }

Expr pow(Expr a, unsigned n)
{
    Node node;
    node.kind = Node::Kind::pow;
    node.lhs = std::move(a);
    node.exponent = n;
    return make(std::move(node));
}

Expr inverse(Expr delta, int monotone, Expr arg)
{
    Node n;
    n.kind = Node::Kind::inverse;
    n.lhs = std::move(delta);
    n.rhs = std::move(arg);
    n.monotone = monotone > 0 ? 1 : -1;
    return make(std::move(n));
}

Expr from_polynomial(const Polynomial &p)
{
    if (p.is_zero()) {
        return constant(0);
    }
    Expr out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        const Rational &c = p.coeffs()[k];
        if (c == 0) {
            continue;
        }
        Expr term;
        if (k == 0) {
            term = constant(c);
        } else {
            Expr mono = k == 1 ? variable() : pow(variable(), static_cast<unsigned>(k));
            term = c == 1 ? mono : mul(constant(c), mono);
        }
        out = out ? add(out, term) : term;
    }
    return out;
}

Expr substitute(const Expr &e, const Expr &inner)
{
    switch (e->kind) {
    case Node::Kind::constant:
        return e;
    case Node::Kind::variable:
        return inner;
    case Node::Kind::inverse:
        return inverse(e->lhs, e->monotone, substitute(e->rhs, inner));
    default:
        break;
    }
    Node n = *e;
    if (n.lhs) {
        n.lhs = substitute(n.lhs, inner);
    }
    if (n.rhs) {
        n.rhs = substitute(n.rhs, inner);
    }
    return make(std::move(n));
}

} // namespace expr

// ------------------------------------------------------------------ parser

namespace
{

constexpr unsigned max_exponent = 4096;

class Parser
{
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse()
    {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) {
            throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        }
        return e;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c)) {
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    Expr expr()
    {
        Expr e;
        if (peek('-')) {
            ++pos_;
            e = expr::neg(term());
        } else {
            if (peek('+')) {
                ++pos_;
            }
            e = term();
        }
        while (true) {
            if (peek('+')) {
                ++pos_;
                e = expr::add(e, term());
            } else if (peek('-')) {
                ++pos_;
                e = expr::sub(e, term());
            } else {
                return e;
            }
        }
    }

    Expr term()
    {
        Expr e = factor();
        while (peek('*')) {
            ++pos_;
            e = expr::mul(e, factor());
        }
        return e;
    }

    Expr factor()
    {
        Expr b = base();
        if (peek('^')) {
            ++pos_;
            skip();
            const std::size_t at = pos_;
            const std::string digits = read_digits();
            if (digits.empty()) {
                throw SyntaxError(at, "expected a nonnegative integer exponent");
            }
            if (digits.size() > 6 || std::stoul(digits) > max_exponent) {
                throw DegreeOverflow("exponent " + digits + " exceeds " + std::to_string(max_exponent));
            }
            return expr::pow(b, static_cast<unsigned>(std::stoul(digits)));
        }
        return b;
    }

    std::string read_digits()
    {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) {
            d.push_back(s_[pos_++]);
        }
        return d;
    }

    Expr number()
    {
        const std::size_t at = pos_;
        std::string lit = read_digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const std::string frac = read_digits();
            if (lit.empty() && frac.empty()) {
                throw SyntaxError(at, "malformed decimal");
            }
            return expr::constant(parse_rational((lit.empty() ? "0" : lit) + "." + frac));
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip();
            const std::size_t den_at = pos_;
            const std::string den = read_digits();
            if (den.empty()) {
                throw SyntaxError(den_at, "expected a positive integer denominator");
            }
            if (Integer{den} == 0) {
                throw SyntaxError(den_at, "zero denominator");
            }
            return expr::constant(parse_rational(lit + "/" + den));
        }
        return expr::constant(parse_rational(lit));
    }

    Expr base()
    {
        skip();
        if (pos_ >= s_.size()) {
            throw SyntaxError(pos_, "unexpected end of input");
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
            return number();
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
            const std::size_t at = pos_;
            std::string id;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])) != 0) {
                id.push_back(s_[pos_++]);
            }
            if (id == "x") {
                return expr::variable();
            }
            Expr (*fn)(Expr) = nullptr;
            if (id == "exp") {
                fn = expr::exp;
            } else if (id == "arctan") {
                fn = expr::arctan;
            } else if (id == "sin") {
                fn = expr::sin;
            } else {
                throw SyntaxError(at, "unknown identifier '" + id + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return fn(arg);
        }
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string print(const Expr &e, int parent)
{
    auto wrap = [parent](int own, std::string s) { return own < parent ? "(" + s + ")" : s; };
    switch (e->kind) {
    case Node::Kind::constant:
        return wrap(e->value < 0 ? 1 : 4, to_string(e->value));
    case Node::Kind::variable:
        return "x";
    case Node::Kind::add:
        return wrap(1, print(e->lhs, 1) + " + " + print(e->rhs, 2));
    case Node::Kind::sub:
        return wrap(1, print(e->lhs, 1) + " - " + print(e->rhs, 2));
    case Node::Kind::neg:
        return wrap(1, "-" + print(e->lhs, 2));
    case Node::Kind::mul:
        return wrap(2, print(e->lhs, 2) + "*" + print(e->rhs, 3));
    case Node::Kind::pow:
        return wrap(3, print(e->lhs, 4) + "^" + std::to_string(e->exponent));
    case Node::Kind::exp:
        return "exp(" + print(e->lhs, 0) + ")";
    case Node::Kind::arctan:
        return "arctan(" + print(e->lhs, 0) + ")";
    case Node::Kind::sin:
        return "sin(" + print(e->lhs, 0) + ")";
    case Node::Kind::inverse:
        return "inverse[" + print(e->lhs, 0) + "](" + print(e->rhs, 0) + ")";
    }
    return "?";
}

} // namespace

Expr parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

std::string to_string(const Expr &e)
{
    return print(e, 0);
}

bool depends_on_x(const Expr &e)
{
    switch (e->kind) {
    case Node::Kind::constant:
        return false;
    case Node::Kind::variable:
        return true;
    case Node::Kind::inverse:
        return depends_on_x(e->rhs);
    default:
        return (e->lhs && depends_on_x(e->lhs)) || (e->rhs && depends_on_x(e->rhs));
    }
}

bool contains_inverse(const Expr &e)
{
    if (e->kind == Node::Kind::inverse) {
        return true;
    }
    return (e->lhs && contains_inverse(e->lhs)) || (e->rhs && contains_inverse(e->rhs));
}

std::optional<Polynomial> as_polynomial(const Expr &e)
{
    using K = Node::Kind;
    switch (e->kind) {
    case K::constant:
        return Polynomial::constant(e->value);
    case K::variable:
        return Polynomial::identity();
    case K::add:
    case K::sub:
    case K::mul: {
        auto a = as_polynomial(e->lhs);
        auto b = as_polynomial(e->rhs);
        if (!a || !b) {
            return std::nullopt;
        }
        if (e->kind == K::add) {
            return *a + *b;
        }
        if (e->kind == K::sub) {
            return *a - *b;
        }
        return *a * *b;
    }
    case K::neg: {
        auto a = as_polynomial(e->lhs);
        if (!a) {
            return std::nullopt;
        }
        return -*a;
    }
    case K::pow: {
        auto a = as_polynomial(e->lhs);
        if (!a) {
            return std::nullopt;
        }
        return a->pow(e->exponent);
    }
    case K::exp:
    case K::arctan:
    case K::sin: {
        auto a = as_polynomial(e->lhs);
        if (!a || !a->is_zero()) {
            return std::nullopt;
        }
        return Polynomial::constant(e->kind == K::exp ? 1 : 0);
    }
    case K::inverse:
        return std::nullopt;
    }
    return std::nullopt;
}

namespace
{

std::optional<Rational> exact_inverse(const Expr &delta, int monotone, const Rational &v)
{
    if (auto at0 = eval_exact(delta, 0); at0 && *at0 == v) {
        return Rational(0);
    }
    const BigFloat y = solve_monotone(delta, monotone, BigFloat(v, 192));
    const Rational yq = y.to_rational();
    const Rational eps = Rational(1, 1) / Rational(Integer(1) << 120);
    const Rational cand = simplest_between(yq - eps, yq + eps);
    if (auto back = eval_exact(delta, cand); back && *back == v) {
        return cand;
    }
    return std::nullopt;
}

} // namespace

std::optional<Rational> eval_exact(const Expr &e, const Rational &x)
{
    using K = Node::Kind;
    switch (e->kind) {
    case K::constant:
        return e->value;
    case K::variable:
        return x;
    case K::add:
    case K::sub:
    case K::mul: {
        auto a = eval_exact(e->lhs, x);
        if (!a) {
            return std::nullopt;
        }
        auto b = eval_exact(e->rhs, x);
        if (!b) {
            return std::nullopt;
        }
        if (e->kind == K::add) {
            return Rational(*a + *b);
        }
        if (e->kind == K::sub) {
            return Rational(*a - *b);
        }
        return Rational(*a * *b);
    }
    case K::neg: {
        auto a = eval_exact(e->lhs, x);
        if (!a) {
            return std::nullopt;
        }
        return Rational(-*a);
    }
    case K::pow: {
        auto a = eval_exact(e->lhs, x);
        if (!a) {
            return std::nullopt;
        }
        return rational_pow(*a, e->exponent);
    }
    case K::exp:
    case K::arctan:
    case K::sin: {
        auto a = eval_exact(e->lhs, x);
        if (!a || *a != 0) {
            return std::nullopt;
        }
        return Rational(e->kind == K::exp ? 1 : 0);
    }
    case K::inverse: {
        auto a = eval_exact(e->rhs, x);
        if (!a) {
            return std::nullopt;
        }
        return exact_inverse(e->lhs, e->monotone, *a);
    }
    }
    return std::nullopt;
}

namespace
{

Dual dual(const Expr &e, const BigFloat &x)
{
    using K = Node::Kind;
    const auto prec = x.precision();
    switch (e->kind) {
    case K::constant:
        return {BigFloat(e->value, prec), BigFloat(0, prec)};
    case K::variable:
        return {x, BigFloat(1, prec)};
    case K::add: {
        Dual a = dual(e->lhs, x);
        Dual b = dual(e->rhs, x);
        return {a.value + b.value, a.slope + b.slope};
    }
    case K::sub: {
        Dual a = dual(e->lhs, x);
        Dual b = dual(e->rhs, x);
        return {a.value - b.value, a.slope - b.slope};
    }
    case K::mul: {
        Dual a = dual(e->lhs, x);
        Dual b = dual(e->rhs, x);
        return {a.value * b.value, a.slope * b.value + a.value * b.slope};
    }
    case K::neg: {
        Dual a = dual(e->lhs, x);
        return {-a.value, -a.slope};
    }
    case K::pow: {
        Dual a = dual(e->lhs, x);
        if (e->exponent == 0) {
            return {BigFloat(1, prec), BigFloat(0, prec)};
        }
        const BigFloat lower = pow(a.value, e->exponent - 1);
        return {lower * a.value, BigFloat(static_cast<long>(e->exponent), prec) * lower * a.slope};
    }
    case K::exp: {
        Dual a = dual(e->lhs, x);
        BigFloat v = exp(a.value);
        return {v, v * a.slope};
    }
    case K::arctan: {
        Dual a = dual(e->lhs, x);
        return {atan(a.value), a.slope / (BigFloat(1, prec) + a.value * a.value)};
    }
    case K::sin: {
        Dual a = dual(e->lhs, x);
        return {sin(a.value), cos(a.value) * a.slope};
    }
    case K::inverse: {
        Dual a = dual(e->rhs, x);
        BigFloat y = solve_monotone(e->lhs, e->monotone, a.value);
        Dual d = dual(e->lhs, y);
        return {y, a.slope / d.slope};
    }
    }
    return {};
}

} // namespace

BigFloat eval(const Expr &e, const BigFloat &x)
{
    const auto prec = x.precision();
    return dual(e, x.rounded(prec + 32)).value.rounded(prec);
}

Dual eval_dual(const Expr &e, const BigFloat &x)
{
    const auto prec = x.precision();
    Dual d = dual(e, x.rounded(prec + 32));
    return {d.value.rounded(prec), d.slope.rounded(prec)};
}

BigFloat solve_monotone(const Expr &delta, int monotone, const BigFloat &v)
{
    const auto prec = v.precision();
    const BigFloat sgn_(static_cast<long>(monotone > 0 ? 1 : -1), prec);
    auto f = [&](const BigFloat &y) { return sgn_ * (dual(delta, y).value - v); };
    BigFloat lo(-1, prec);
    BigFloat hi(1, prec);
    for (int k = 0; f(lo).sign() > 0; ++k) {
        if (k > 2048) {
            throw DomainError("inverse: no bracket below for value " + v.to_string(20));
        }
        lo = lo * BigFloat(2, prec);
    }
    for (int k = 0; f(hi).sign() < 0; ++k) {
        if (k > 2048) {
            throw DomainError("inverse: no bracket above for value " + v.to_string(20));
        }
        hi = hi * BigFloat(2, prec);
    }
    BigFloat y = ldexp(lo + hi, -1);
    const long budget = 4 * static_cast<long>(prec) + 200;
    for (long it = 0; it < budget; ++it) {
        const Dual d = dual(delta, y);
        const BigFloat fy = sgn_ * (d.value - v);
        if (fy.is_zero()) {
            return y;
        }
        if (fy.sign() < 0) {
            lo = y;
        } else {
            hi = y;
        }
        BigFloat next = d.slope.is_zero() ? ldexp(lo + hi, -1) : y - (d.value - v) / d.slope;
        if (!(lo < next && next < hi)) {
            next = ldexp(lo + hi, -1);
        }
        const BigFloat step = abs(next - y);
        const BigFloat scale = abs(y) > BigFloat(1, prec) ? abs(y) : BigFloat(1, prec);
        y = next;
        if (step <= ldexp(scale, -static_cast<long>(prec) + 2) || !(lo < hi) || (hi - lo) <= ldexp(scale, -static_cast<long>(prec))) {
            break;
        }
    }
    return y;
}

// -------------------------------------------------------------------- jets

namespace
{

std::optional<std::vector<Rational>> jet_q(const Expr &e, const Rational &c, std::size_t n)
{
    using K = Node::Kind;
    const Rational zero(0);
    switch (e->kind) {
    case K::constant: {
        auto r = ps::zeros(n, zero);
        r[0] = e->value;
        return r;
    }
    case K::variable: {
        auto r = ps::zeros(n, zero);
        r[0] = c;
        if (n >= 1) {
            r[1] = 1;
        }
        return r;
    }
    case K::add:
    case K::sub:
    case K::mul: {
        auto a = jet_q(e->lhs, c, n);
        if (!a) {
            return std::nullopt;
        }
        auto b = jet_q(e->rhs, c, n);
        if (!b) {
            return std::nullopt;
        }
        if (e->kind == K::add) {
            return ps::add(*a, *b);
        }
        if (e->kind == K::sub) {
            return ps::sub(*a, *b);
        }
        return ps::mul(*a, *b);
    }
    case K::neg: {
        auto a = jet_q(e->lhs, c, n);
        if (!a) {
            return std::nullopt;
        }
        return ps::scale(*a, Rational(-1));
    }
    case K::pow: {
        auto a = jet_q(e->lhs, c, n);
        if (!a) {
            return std::nullopt;
        }
        return ps::power(*a, e->exponent);
    }
    case K::exp:
    case K::arctan:
    case K::sin: {
        auto a = jet_q(e->lhs, c, n);
        if (!a || (*a)[0] != 0) {
            return std::nullopt;
        }
        if (e->kind == K::exp) {
            return ps::exp(*a, Rational(1));
        }
        if (e->kind == K::arctan) {
            return ps::arctan(*a, Rational(0));
        }
        return ps::sin_cos(*a, Rational(0), Rational(1)).first;
    }
    case K::inverse: {
        auto a = jet_q(e->rhs, c, n);
        if (!a) {
            return std::nullopt;
        }
        const Rational v = (*a)[0];
        auto y0 = exact_inverse(e->lhs, e->monotone, v);
        if (!y0) {
            return std::nullopt;
        }
        auto d = jet_q(e->lhs, *y0, n);
        if (!d) {
            return std::nullopt;
        }
        (*d)[0] -= v;
        auto r = ps::reversion(*d);
        (*a)[0] = 0;
        auto out = ps::compose(r, *a);
        out[0] = *y0;
        return out;
    }
    }
    return std::nullopt;
}

std::vector<BigFloat> jet_f(const Expr &e, const BigFloat &c, std::size_t n)
{
    using K = Node::Kind;
    const auto prec = c.precision();
    const BigFloat zero(0, prec);
    switch (e->kind) {
    case K::constant: {
        auto r = ps::zeros(n, zero);
        r[0] = BigFloat(e->value, prec);
        return r;
    }
    case K::variable: {
        auto r = ps::zeros(n, zero);
        r[0] = c;
        if (n >= 1) {
            r[1] = BigFloat(1, prec);
        }
        return r;
    }
    case K::add:
        return ps::add(jet_f(e->lhs, c, n), jet_f(e->rhs, c, n));
    case K::sub:
        return ps::sub(jet_f(e->lhs, c, n), jet_f(e->rhs, c, n));
    case K::mul:
        return ps::mul(jet_f(e->lhs, c, n), jet_f(e->rhs, c, n));
    case K::neg:
        return ps::scale(jet_f(e->lhs, c, n), BigFloat(-1, prec));
    case K::pow:
        return ps::power(jet_f(e->lhs, c, n), e->exponent);
    case K::exp: {
        auto a = jet_f(e->lhs, c, n);
        return ps::exp(a, exp(a[0]));
    }
    case K::arctan: {
        auto a = jet_f(e->lhs, c, n);
        return ps::arctan(a, atan(a[0]));
    }
    case K::sin: {
        auto a = jet_f(e->lhs, c, n);
        return ps::sin_cos(a, sin(a[0]), cos(a[0])).first;
    }
    case K::inverse: {
        auto a = jet_f(e->rhs, c, n);
        const BigFloat v = a[0];
        const BigFloat y0 = solve_monotone(e->lhs, e->monotone, v);
        auto d = jet_f(e->lhs, y0, n);
        d[0] = zero;
        auto r = ps::reversion(d);
        a[0] = zero;
        auto out = ps::compose(r, a);
        out[0] = y0;
        return out;
    }
    }
    return {};
}

} // namespace

std::optional<std::vector<Rational>> jet_exact(const Expr &e, const Rational &center, std::size_t order)
{
    return jet_q(e, center, order);
}

std::vector<BigFloat> jet_float(const Expr &e, const BigFloat &center, std::size_t order)
{
    const auto prec = center.precision();
    auto r = jet_f(e, center.rounded(prec + 32), order);
    for (auto &c : r) {
        c = c.rounded(prec);
    }
    return r;
}

// ------------------------------------------------------------------ limits

namespace
{

Limit finite(const BigFloat &v, std::optional<Rational> exact = std::nullopt)
{
    Limit l;
    l.kind = Limit::Kind::finite;
    l.approx = v;
    l.exact = std::move(exact);
    return l;
}

Limit infinite(int sign)
{
    Limit l;
    l.kind = sign > 0 ? Limit::Kind::pos_inf : Limit::Kind::neg_inf;
    return l;
}

Limit unknown()
{
    return Limit{};
}

int inf_sign(const Limit &l)
{
    return l.kind == Limit::Kind::pos_inf ? 1 : (l.kind == Limit::Kind::neg_inf ? -1 : 0);
}

// Sign of a finite limit when it is certain: exact, or an approximation far
// from zero relative to the working precision.
int finite_sign(const Limit &l)
{
    if (l.exact) {
        return sgn(*l.exact);
    }
    if (l.approx.is_zero()) {
        return 0;
    }
    return l.approx.log2_abs() > -static_cast<double>(l.approx.precision()) / 2 ? l.approx.sign() : 0;
}

Limit negate(Limit l)
{
    if (l.kind == Limit::Kind::finite) {
        l.approx = -l.approx;
        if (l.exact) {
            l.exact = -*l.exact;
        }
        return l;
    }
    if (l.kind == Limit::Kind::unknown) {
        return l;
    }
    return infinite(-inf_sign(l));
}

Limit sum(const Limit &a, const Limit &b)
{
    if (a.kind == Limit::Kind::unknown || b.kind == Limit::Kind::unknown) {
        return unknown();
    }
    const int sa = inf_sign(a);
    const int sb = inf_sign(b);
    if (sa != 0 && sb != 0) {
        return sa == sb ? infinite(sa) : unknown();
    }
    if (sa != 0) {
        return infinite(sa);
    }
    if (sb != 0) {
        return infinite(sb);
    }
    std::optional<Rational> ex;
    if (a.exact && b.exact) {
        ex = *a.exact + *b.exact;
    }
    return finite(a.approx + b.approx, ex);
}

Limit product(const Limit &a, const Limit &b)
{
    if (a.kind == Limit::Kind::unknown || b.kind == Limit::Kind::unknown) {
        return unknown();
    }
    const int sa = inf_sign(a);
    const int sb = inf_sign(b);
    if (sa != 0 && sb != 0) {
        return infinite(sa * sb);
    }
    if (sa != 0 || sb != 0) {
        const int s = finite_sign(sa != 0 ? b : a);
        if (s == 0) {
            return unknown();
        }
        return infinite((sa != 0 ? sa : sb) * s);
    }
    std::optional<Rational> ex;
    if (a.exact && b.exact) {
        ex = *a.exact * *b.exact;
    }
    return finite(a.approx * b.approx, ex);
}

Limit lim(const Expr &e, int dir, mpfr_prec_t prec)
{
    using K = Node::Kind;
    switch (e->kind) {
    case K::constant:
        return finite(BigFloat(e->value, prec), e->value);
    case K::variable:
        return infinite(dir);
    case K::add:
        return sum(lim(e->lhs, dir, prec), lim(e->rhs, dir, prec));
    case K::sub:
        return sum(lim(e->lhs, dir, prec), negate(lim(e->rhs, dir, prec)));
    case K::neg:
        return negate(lim(e->lhs, dir, prec));
    case K::mul:
        return product(lim(e->lhs, dir, prec), lim(e->rhs, dir, prec));
    case K::pow: {
        if (e->exponent == 0) {
            return finite(BigFloat(1, prec), Rational(1));
        }
        const Limit a = lim(e->lhs, dir, prec);
        if (a.kind == Limit::Kind::finite) {
            std::optional<Rational> ex;
            if (a.exact) {
                ex = rational_pow(*a.exact, e->exponent);
            }
            return finite(pow(a.approx, e->exponent), ex);
        }
        if (a.kind == Limit::Kind::unknown) {
            return a;
        }
        return infinite(e->exponent % 2 == 0 ? 1 : inf_sign(a));
    }
    case K::exp: {
        const Limit a = lim(e->lhs, dir, prec);
        if (a.kind == Limit::Kind::pos_inf) {
            return a;
        }
        if (a.kind == Limit::Kind::neg_inf) {
            return finite(BigFloat(0, prec), Rational(0));
        }
        if (a.kind == Limit::Kind::unknown) {
            return a;
        }
        return a.exact && *a.exact == 0 ? finite(BigFloat(1, prec), Rational(1)) : finite(exp(a.approx));
    }
    case K::arctan: {
        const Limit a = lim(e->lhs, dir, prec);
        if (a.kind == Limit::Kind::unknown) {
            return a;
        }
        if (a.kind != Limit::Kind::finite) {
            return finite(ldexp(BigFloat::pi(prec), -1) * BigFloat(static_cast<long>(inf_sign(a)), prec));
        }
        return a.exact && *a.exact == 0 ? a : finite(atan(a.approx));
    }
    case K::sin: {
        const Limit a = lim(e->lhs, dir, prec);
        if (a.kind != Limit::Kind::finite) {
            return unknown();
        }
        return a.exact && *a.exact == 0 ? a : finite(sin(a.approx));
    }
    case K::inverse: {
        const Limit a = lim(e->rhs, dir, prec);
        if (a.kind == Limit::Kind::unknown) {
            return a;
        }
        if (a.kind != Limit::Kind::finite) {
            return infinite(inf_sign(a) * e->monotone);
        }
        std::optional<Rational> ex;
        if (a.exact) {
            ex = exact_inverse(e->lhs, e->monotone, *a.exact);
        }
        return finite(solve_monotone(e->lhs, e->monotone, a.approx), ex);
    }
    }
    return unknown();
}

} // namespace

Limit limit_at(const Expr &e, const ExtRational &point, mpfr_prec_t prec)
{
    if (point.is_finite()) {
        if (auto v = eval_exact(e, point.value())) {
            return finite(BigFloat(*v, prec), *v);
        }
        return finite(eval(e, BigFloat(point.value(), prec)));
    }
    const int dir = point.kind() == ExtRational::Kind::pos_inf ? 1 : -1;
    if (auto p = as_polynomial(e)) {
        const ExtRational l = p->limit(point);
        if (l.is_finite()) {
            return finite(BigFloat(l.value(), prec), l.value());
        }
        return infinite(l.kind() == ExtRational::Kind::pos_inf ? 1 : -1);
    }
    return lim(e, dir, prec);
}

} // namespace compspec
