#ifndef COMPSPEC_REAL_NUMBER_HPP
#define COMPSPEC_REAL_NUMBER_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include <compspec/numbers.hpp>
#include <compspec/polynomial.hpp>

namespace compspec
{

// Result of evaluating a symbol: exact when possible, else a binary float.
class RealValue
{
public:
    RealValue() : v_(Rational(0)) {}
    RealValue(const Rational &q) : v_(q) {}
    RealValue(const BigFloat &x) : v_(x) {}

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational &rational() const { return std::get<Rational>(v_); }
    const BigFloat &approx() const { return std::get<BigFloat>(v_); }
    BigFloat to_bigfloat(mpfr_prec_t prec) const;
    std::string to_string(int digits = 40) const;

    friend bool operator==(const RealValue &a, const RealValue &b) { return a.v_ == b.v_; }

private:
    std::variant<Rational, BigFloat> v_;
};

// A certified real number: rational, quadratic surd, the value g(alpha) of a
// rational polynomial g at a real algebraic alpha, or (for heuristic
// analyses) a plain rational enclosure.
class RealNumber
{
public:
    enum class Kind { rational, surd, algebraic, enclosure };

    struct Image {
        RealAlgebraic alpha;
        Polynomial g;
    };
    struct Enclosure {
        Rational lo;
        Rational hi;
    };

    RealNumber() : v_(Rational(0)) {}
    RealNumber(const Rational &q) : v_(q) {}
    RealNumber(const QuadSurd &s);
    RealNumber(const RealAlgebraic &a);
    RealNumber(RealAlgebraic alpha, Polynomial g);
    static RealNumber enclosure(Rational lo, Rational hi);

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_exact() const { return kind() != Kind::enclosure; }
    std::optional<Rational> as_rational() const;
    const QuadSurd &surd() const { return std::get<QuadSurd>(v_); }
    const Image &image() const { return std::get<Image>(v_); }
    const Enclosure &bounds() const { return std::get<Enclosure>(v_); }

    // Rational lower/upper bounds of width <= 2^-bits (enclosures return
    // their stored bounds).
    std::pair<Rational, Rational> enclose(unsigned bits) const;
    BigFloat to_bigfloat(mpfr_prec_t prec) const;

    // sign(x - r); nullopt when an enclosure cannot decide.
    std::optional<int> compare(const Rational &r) const;
    // sign(|x| - r) for r >= 0.
    std::optional<int> compare_abs(const Rational &r) const;
    // x^n as a number of the same class (algebraic images stay exact).
    RealNumber pow(unsigned long n) const;
    RealNumber negated() const;

    std::string to_string() const;

private:
    std::variant<Rational, QuadSurd, Image, Enclosure> v_;
};

// Same point: exact comparison for exact numbers, overlap otherwise.
bool same_point(const RealNumber &a, const RealNumber &b);

} // namespace compspec

#endif
