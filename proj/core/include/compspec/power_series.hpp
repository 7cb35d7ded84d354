#ifndef COMPSPEC_POWER_SERIES_HPP
#define COMPSPEC_POWER_SERIES_HPP

// Truncated power series kernels over a coefficient field T. A series of
// order N is a vector of N + 1 coefficients; every kernel truncates its
// result to the requested order. T is one of Rational, GaussRational,
// BigFloat, BigComplex.

#include <stdexcept>
#include <vector>

#include <compspec/numbers.hpp>

namespace compspec::ps
{

inline Rational lift(const Rational &q, const Rational &) { return q; }
inline GaussRational lift(const Rational &q, const GaussRational &) { return GaussRational(q); }
inline BigFloat lift(const Rational &q, const BigFloat &like) { return BigFloat(q, like.precision()); }
inline BigComplex lift(const Rational &q, const BigComplex &like)
{
    return BigComplex(BigFloat(q, like.precision()), BigFloat(0, like.precision()));
}

inline bool is_zero(const Rational &q) { return q == 0; }
inline bool is_zero(const GaussRational &z) { return z.is_zero(); }
inline bool is_zero(const BigFloat &x) { return x.is_zero(); }
inline bool is_zero(const BigComplex &z) { return z.is_zero(); }

template <class T>
std::vector<T> zeros(std::size_t order, const T &like)
{
    return std::vector<T>(order + 1, lift(Rational(0), like));
}

template <class T>
std::vector<T> truncate(std::vector<T> a, std::size_t order, const T &like)
{
    a.resize(order + 1, lift(Rational(0), like));
    return a;
}

template <class T>
std::vector<T> add(const std::vector<T> &a, const std::vector<T> &b)
{
    std::vector<T> r = a;
    for (std::size_t k = 0; k < r.size() && k < b.size(); ++k) {
        r[k] += b[k];
    }
    return r;
}

template <class T>
std::vector<T> sub(const std::vector<T> &a, const std::vector<T> &b)
{
    std::vector<T> r = a;
    for (std::size_t k = 0; k < r.size() && k < b.size(); ++k) {
        r[k] -= b[k];
    }
    return r;
}

template <class T>
std::vector<T> scale(std::vector<T> a, const T &s)
{
    for (auto &c : a) {
        c *= s;
    }
    return a;
}

template <class T>
std::vector<T> mul(const std::vector<T> &a, const std::vector<T> &b)
{
    const std::size_t n = a.size();
    std::vector<T> r = zeros(n - 1, a[0]);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

template <class T>
std::vector<T> power(const std::vector<T> &a, unsigned long e)
{
    std::vector<T> r = zeros(a.size() - 1, a[0]);
    r[0] = lift(Rational(1), a[0]);
    std::vector<T> b = a;
    while (e != 0) {
        if ((e & 1UL) != 0) {
            r = mul(r, b);
        }
        e >>= 1UL;
        if (e != 0) {
            b = mul(b, b);
        }
    }
    return r;
}

template <class T>
std::vector<T> reciprocal(const std::vector<T> &a)
{
    if (is_zero(a[0])) {
        throw std::domain_error("series reciprocal of a non-unit");
    }
    const std::size_t n = a.size();
    std::vector<T> r = zeros(n - 1, a[0]);
    const T inv = lift(Rational(1), a[0]) / a[0];
    r[0] = inv;
    for (std::size_t k = 1; k < n; ++k) {
        T acc = lift(Rational(0), a[0]);
        for (std::size_t j = 1; j <= k; ++j) {
            acc += a[j] * r[k - j];
        }
        r[k] = -(acc * inv);
    }
    return r;
}

template <class T>
std::vector<T> derivative(const std::vector<T> &a)
{
    std::vector<T> r = zeros(a.size() - 1, a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        r[k - 1] = a[k] * lift(Rational(static_cast<long>(k)), a[0]);
    }
    return r;
}

// Antiderivative with constant term c0; the top coefficient of `a` drops out.
template <class T>
std::vector<T> integral(const std::vector<T> &a, const T &c0)
{
    std::vector<T> r = zeros(a.size() - 1, a[0]);
    r[0] = c0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        r[k] = a[k - 1] / lift(Rational(static_cast<long>(k)), a[0]);
    }
    return r;
}

// f(g(t)) where g has zero constant term.
template <class T>
std::vector<T> compose(const std::vector<T> &f, const std::vector<T> &g)
{
    if (!is_zero(g[0])) {
        throw std::domain_error("series composition needs an inner series without constant term");
    }
    const std::size_t n = g.size();
    std::vector<T> r = zeros(n - 1, g[0]);
    for (std::size_t k = std::min(f.size(), n); k-- > 0;) {
        r = mul(r, g);
        r[0] += f[k];
    }
    return r;
}

// exp(t) given e0 = exp(t[0]).
template <class T>
std::vector<T> exp(const std::vector<T> &t, const T &e0)
{
    const std::size_t n = t.size();
    std::vector<T> e = zeros(n - 1, t[0]);
    e[0] = e0;
    for (std::size_t k = 1; k < n; ++k) {
        T acc = lift(Rational(0), t[0]);
        for (std::size_t j = 1; j <= k; ++j) {
            acc += lift(Rational(static_cast<long>(j)), t[0]) * t[j] * e[k - j];
        }
        e[k] = acc / lift(Rational(static_cast<long>(k)), t[0]);
    }
    return e;
}

// sin(t) and cos(t) given their values at t[0].
template <class T>
std::pair<std::vector<T>, std::vector<T>> sin_cos(const std::vector<T> &t, const T &s0, const T &c0)
{
    const std::size_t n = t.size();
    std::vector<T> s = zeros(n - 1, t[0]);
    std::vector<T> c = zeros(n - 1, t[0]);
    s[0] = s0;
    c[0] = c0;
    for (std::size_t k = 1; k < n; ++k) {
        T as = lift(Rational(0), t[0]);
        T ac = lift(Rational(0), t[0]);
        for (std::size_t j = 1; j <= k; ++j) {
            const T jt = lift(Rational(static_cast<long>(j)), t[0]) * t[j];
            as += jt * c[k - j];
            ac += jt * s[k - j];
        }
        const T kk = lift(Rational(static_cast<long>(k)), t[0]);
        s[k] = as / kk;
        c[k] = -(ac / kk);
    }
    return {s, c};
}

// arctan(t) given a0 = arctan(t[0]): integrate t' / (1 + t^2).
template <class T>
std::vector<T> arctan(const std::vector<T> &t, const T &a0)
{
    std::vector<T> den = mul(t, t);
    den[0] += lift(Rational(1), t[0]);
    const std::vector<T> q = mul(derivative(t), reciprocal(den));
    return integral(q, a0);
}

// Compositional inverse R of d (d[0] = 0, d[1] != 0): d(R(w)) = w.
template <class T>
std::vector<T> reversion(const std::vector<T> &d)
{
    if (!is_zero(d[0]) || is_zero(d[1])) {
        throw std::domain_error("series reversion needs d(0) = 0 and d'(0) != 0");
    }
    const std::size_t n = d.size();
    std::vector<T> r = zeros(n - 1, d[0]);
    const T inv = lift(Rational(1), d[0]) / d[1];
    if (n > 1) {
        r[1] = inv;
    }
    for (std::size_t k = 2; k < n; ++k) {
        const std::vector<T> c = compose(d, r);
        r[k] = -(c[k] * inv);
    }
    return r;
}

} // namespace compspec::ps

#endif
