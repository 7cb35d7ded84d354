#ifndef COMPSPEC_INTERVAL_HPP
#define COMPSPEC_INTERVAL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <compspec/numbers.hpp>

namespace compspec
{

// A finite rational or one of the two infinities.
class ExtRational
{
public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExtRational() = default;
    ExtRational(const Rational &q) : kind_(Kind::finite), value_(q) {}
    ExtRational(long q) : kind_(Kind::finite), value_(q) {}

    static ExtRational neg_inf() { return ExtRational(Kind::neg_inf); }
    static ExtRational pos_inf() { return ExtRational(Kind::pos_inf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const Rational &value() const { return value_; }

    std::string to_string() const;

    friend bool operator==(const ExtRational &a, const ExtRational &b)
    {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b);

private:
    explicit ExtRational(Kind k) : kind_(k) {}
    Kind kind_ = Kind::finite;
    Rational value_{0};
};

// Open interval (lower, upper), possibly unbounded.
class Interval
{
public:
    Interval() : Interval(ExtRational::neg_inf(), ExtRational::pos_inf()) {}
    Interval(ExtRational lower, ExtRational upper);

    static Interval real_line() { return Interval(); }

    const ExtRational &lower() const { return lower_; }
    const ExtRational &upper() const { return upper_; }
    bool is_real_line() const { return !lower_.is_finite() && !upper_.is_finite(); }
    bool is_bounded() const { return lower_.is_finite() && upper_.is_finite(); }

    bool contains(const Rational &x) const;
    bool contains(const BigFloat &x) const;
    // closure(other) within this interval's closure
    bool contains(const Interval &other) const;
    // closure(other) strictly inside this open interval
    bool contains_closure_of(const Interval &other) const;
    std::optional<Interval> intersect(const Interval &other) const;

    // A rational point inside, near the middle (0 for the real line).
    Rational interior_point() const;
    // `count` interior sample points, increasing. Unbounded ends are reached
    // through the map t -> t / (1 - |t|).
    std::vector<Rational> grid(std::size_t count) const;

    std::string to_string() const;

    friend bool operator==(const Interval &a, const Interval &b) = default;

private:
    ExtRational lower_;
    ExtRational upper_;
};

// Syntax "(lo,hi)" with lo/hi rationals, decimals, "-inf" or "inf".
Interval parse_interval(std::string_view text);

// A finite union of open intervals (sorted, disjoint after normalization).
class IntervalUnion
{
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);

    const std::vector<Interval> &parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    bool contains(const Rational &x) const;
    IntervalUnion intersect(const IntervalUnion &other) const;
    std::string to_string() const;

    friend bool operator==(const IntervalUnion &a, const IntervalUnion &b) = default;

private:
    std::vector<Interval> parts_;
};

// True when the open sets `cover` jointly contain every point of `target`.
bool covers(const std::vector<IntervalUnion> &cover, const Interval &target);

} // namespace compspec

#endif
