#include <compspec/truncated_series.hpp>

#include <stdexcept>

namespace compspec
{

TruncatedSeries::TruncatedSeries(RealValue center, std::vector<GaussRational> coeffs)
    : center_(std::move(center)), exact_(true), q_(std::move(coeffs))
{
    if (q_.empty()) {
        throw std::invalid_argument("series needs at least one coefficient");
    }
}

TruncatedSeries::TruncatedSeries(RealValue center, std::vector<BigComplex> coeffs, mpfr_prec_t precision)
    : center_(std::move(center)), exact_(false), f_(std::move(coeffs)), prec_(precision)
{
    if (f_.empty()) {
        throw std::invalid_argument("series needs at least one coefficient");
    }
}

TruncatedSeries TruncatedSeries::real(RealValue center, const std::vector<Rational> &coeffs)
{
    std::vector<GaussRational> q(coeffs.begin(), coeffs.end());
    return TruncatedSeries(std::move(center), std::move(q));
}

TruncatedSeries TruncatedSeries::real(RealValue center, const std::vector<BigFloat> &coeffs)
{
    if (coeffs.empty()) {
        throw std::invalid_argument("series needs at least one coefficient");
    }
    const auto prec = coeffs.front().precision();
    std::vector<BigComplex> f;
    f.reserve(coeffs.size());
    for (const auto &c : coeffs) {
        f.emplace_back(c, BigFloat(0, prec));
    }
    return TruncatedSeries(std::move(center), std::move(f), prec);
}

bool TruncatedSeries::is_real() const
{
    if (exact_) {
        for (const auto &c : q_) {
            if (!c.is_real()) {
                return false;
            }
        }
        return true;
    }
    for (const auto &c : f_) {
        if (!c.im.is_zero()) {
            return false;
        }
    }
    return true;
}

std::vector<Rational> TruncatedSeries::real_rationals() const
{
    if (!exact_ || !is_real()) {
        throw std::logic_error("series is not an exact real series");
    }
    std::vector<Rational> out;
    out.reserve(q_.size());
    for (const auto &c : q_) {
        out.push_back(c.re);
    }
    return out;
}

std::vector<BigFloat> TruncatedSeries::real_floats(mpfr_prec_t prec) const
{
    std::vector<BigFloat> out;
    for (std::size_t k = 0; k <= order(); ++k) {
        out.push_back(coeff(k, prec).re);
    }
    return out;
}

BigComplex TruncatedSeries::coeff(std::size_t k, mpfr_prec_t prec) const
{
    if (exact_) {
        return BigComplex(q_.at(k), prec);
    }
    return BigComplex(f_.at(k).re.rounded(prec), f_.at(k).im.rounded(prec));
}

std::vector<BigComplex> TruncatedSeries::complex_floats(mpfr_prec_t prec) const
{
    std::vector<BigComplex> out;
    for (std::size_t k = 0; k <= order(); ++k) {
        out.push_back(coeff(k, prec));
    }
    return out;
}

GaussRational TruncatedSeries::eval_exact(const Rational &t) const
{
    if (!exact_) {
        throw std::logic_error("eval_exact on a float series");
    }
    GaussRational acc(0);
    for (auto it = q_.rbegin(); it != q_.rend(); ++it) {
        acc = acc * GaussRational(t) + *it;
    }
    return acc;
}

BigComplex TruncatedSeries::eval(const BigFloat &t) const
{
    const auto prec = t.precision();
    BigComplex acc(BigFloat(0, prec), BigFloat(0, prec));
    const BigComplex tt(t, BigFloat(0, prec));
    for (std::size_t k = order() + 1; k-- > 0;) {
        acc = acc * tt + coeff(k, prec);
    }
    return acc;
}

bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a.center_ == b.center_ && a.exact_ == b.exact_ && a.q_ == b.q_ && a.f_ == b.f_ && a.prec_ == b.prec_;
}

} // namespace compspec
