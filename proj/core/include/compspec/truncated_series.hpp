#ifndef COMPSPEC_TRUNCATED_SERIES_HPP
#define COMPSPEC_TRUNCATED_SERIES_HPP

#include <string>
#include <vector>

#include <compspec/numbers.hpp>
#include <compspec/real_number.hpp>

namespace compspec
{

// Coefficients of sum c_n (x - center)^n through `order`. Exact series keep
// Gaussian rationals; the rest keep complex binary floats at `precision`.
// Real series simply have zero imaginary parts.
class TruncatedSeries
{
public:
    TruncatedSeries() = default;
    TruncatedSeries(RealValue center, std::vector<GaussRational> coeffs);
    TruncatedSeries(RealValue center, std::vector<BigComplex> coeffs, mpfr_prec_t precision);

    static TruncatedSeries real(RealValue center, const std::vector<Rational> &coeffs);
    static TruncatedSeries real(RealValue center, const std::vector<BigFloat> &coeffs);

    const RealValue &center() const { return center_; }
    std::size_t order() const { return exact_ ? q_.size() - 1 : f_.size() - 1; }
    bool exact() const { return exact_; }
    mpfr_prec_t precision() const { return prec_; }
    bool is_real() const;

    const std::vector<GaussRational> &exact_coeffs() const { return q_; }
    const std::vector<BigComplex> &float_coeffs() const { return f_; }
    // Real parts as rationals (exact series with zero imaginary parts only).
    std::vector<Rational> real_rationals() const;
    std::vector<BigFloat> real_floats(mpfr_prec_t prec) const;
    BigComplex coeff(std::size_t k, mpfr_prec_t prec) const;
    std::vector<BigComplex> complex_floats(mpfr_prec_t prec) const;

    // Value at a point t = x - center by Horner's rule.
    GaussRational eval_exact(const Rational &t) const;
    BigComplex eval(const BigFloat &t) const;

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b);

private:
    RealValue center_;
    bool exact_ = true;
    std::vector<GaussRational> q_;
    std::vector<BigComplex> f_;
    mpfr_prec_t prec_ = 0;
};

} // namespace compspec

#endif
