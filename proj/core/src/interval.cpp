#include <compspec/interval.hpp>

#include <algorithm>
#include <cctype>

#include <compspec/errors.hpp>

namespace compspec
{

std::string ExtRational::to_string() const
{
    switch (kind_) {
    case Kind::neg_inf:
        return "-inf";
    case Kind::pos_inf:
        return "inf";
    default:
        return compspec::to_string(value_);
    }
}

std::strong_ordering operator<=>(const ExtRational &a, const ExtRational &b)
{
    if (a.kind_ != b.kind_) {
        return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    if (a.kind_ != ExtRational::Kind::finite) {
        return std::strong_ordering::equal;
    }
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Interval::Interval(ExtRational lower, ExtRational upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.kind() == ExtRational::Kind::pos_inf || upper_.kind() == ExtRational::Kind::neg_inf || !(lower_ < upper_)) {
        throw DomainError("empty interval (" + lower_.to_string() + "," + upper_.to_string() + ")");
    }
}

bool Interval::contains(const Rational &x) const
{
    return lower_ < ExtRational(x) && ExtRational(x) < upper_;
}

bool Interval::contains(const BigFloat &x) const
{
    if (!x.is_finite()) {
        return false;
    }
    if (lower_.is_finite() && mpfr_cmp_q(x.get(), lower_.value().get_mpq_t()) <= 0) {
        return false;
    }
    if (upper_.is_finite() && mpfr_cmp_q(x.get(), upper_.value().get_mpq_t()) >= 0) {
        return false;
    }
    return true;
}

bool Interval::contains(const Interval &other) const
{
    return lower_ <= other.lower_ && other.upper_ <= upper_;
}

bool Interval::contains_closure_of(const Interval &other) const
{
    return other.is_bounded() && lower_ < other.lower_ && other.upper_ < upper_;
}

std::optional<Interval> Interval::intersect(const Interval &other) const
{
    ExtRational lo = std::max(lower_, other.lower_);
    ExtRational hi = std::min(upper_, other.upper_);
    if (!(lo < hi)) {
        return std::nullopt;
    }
    return Interval(lo, hi);
}

Rational Interval::interior_point() const
{
    if (is_bounded()) {
        return (lower_.value() + upper_.value()) / 2;
    }
    if (lower_.is_finite()) {
        return lower_.value() + 1;
    }
    if (upper_.is_finite()) {
        return upper_.value() - 1;
    }
    return 0;
}

std::vector<Rational> Interval::grid(std::size_t count) const
{
    std::vector<Rational> out;
    out.reserve(count);
    const Rational n(static_cast<long>(count + 1));
    for (std::size_t k = 1; k <= count; ++k) {
        const Rational s = Rational(static_cast<long>(k)) / n; // in (0,1)
        if (is_bounded()) {
            out.push_back(lower_.value() + (upper_.value() - lower_.value()) * s);
        } else if (lower_.is_finite()) {
            out.push_back(lower_.value() + s / (1 - s));
        } else if (upper_.is_finite()) {
            const Rational r = 1 - s;
            out.push_back(upper_.value() - r / (1 - r));
        } else {
            const Rational t = 2 * s - 1; // in (-1,1)
            out.push_back(t / (1 - abs(t)));
        }
    }
    return out;
}

std::string Interval::to_string() const
{
    return "(" + lower_.to_string() + "," + upper_.to_string() + ")";
}

namespace
{

ExtRational parse_end(std::string_view s, std::size_t offset)
{
    std::string t;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            t.push_back(c);
        }
    }
    if (t == "inf" || t == "+inf") {
        return ExtRational::pos_inf();
    }
    if (t == "-inf") {
        return ExtRational::neg_inf();
    }
    try {
        return ExtRational(parse_rational(t));
    } catch (const SyntaxError &e) {
        throw SyntaxError(offset, "bad interval endpoint '" + t + "'");
    }
}

} // namespace

Interval parse_interval(std::string_view text)
{
    const auto open = text.find('(');
    const auto comma = text.find(',');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || comma == std::string_view::npos || close == std::string_view::npos || !(open < comma && comma < close)) {
        throw SyntaxError(0, "interval must look like (lo,hi)");
    }
    for (std::size_t k = 0; k < open; ++k) {
        if (std::isspace(static_cast<unsigned char>(text[k])) == 0) {
            throw SyntaxError(k, "unexpected character before '('");
        }
    }
    const ExtRational lo = parse_end(text.substr(open + 1, comma - open - 1), open + 1);
    const ExtRational hi = parse_end(text.substr(comma + 1, close - comma - 1), comma + 1);
    return Interval(lo, hi);
}

IntervalUnion::IntervalUnion(std::vector<Interval> parts)
{
    std::sort(parts.begin(), parts.end(), [](const Interval &a, const Interval &b) { return a.lower() < b.lower(); });
    for (auto &p : parts) {
        // Overlapping open intervals merge; touching ones (shared endpoint) stay apart.
        if (!parts_.empty() && p.lower() < parts_.back().upper()) {
            const ExtRational hi = std::max(parts_.back().upper(), p.upper());
            parts_.back() = Interval(parts_.back().lower(), hi);
        } else {
            parts_.push_back(std::move(p));
        }
    }
}

bool IntervalUnion::contains(const Rational &x) const
{
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval &p) { return p.contains(x); });
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion &other) const
{
    std::vector<Interval> out;
    for (const auto &a : parts_) {
        for (const auto &b : other.parts_) {
            if (auto c = a.intersect(b)) {
                out.push_back(*c);
            }
        }
    }
    return IntervalUnion(std::move(out));
}

std::string IntervalUnion::to_string() const
{
    if (parts_.empty()) {
        return "{}";
    }
    std::string out;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        if (k != 0) {
            out += "|";
        }
        out += parts_[k].to_string();
    }
    return out;
}

bool covers(const std::vector<IntervalUnion> &cover, const Interval &target)
{
    std::vector<Interval> all;
    for (const auto &u : cover) {
        all.insert(all.end(), u.parts().begin(), u.parts().end());
    }
    // `reach` is covered up to but excluding itself (unless reach == lower).
    ExtRational reach = target.lower();
    bool first = true;
    while (reach < target.upper()) {
        ExtRational best = reach;
        bool found = false;
        for (const auto &p : all) {
            // Need p to contain a right neighbourhood of `reach` and the point
            // itself when it lies inside the target.
            const bool ok = first ? (p.lower() <= reach) : (p.lower() < reach);
            if (ok && reach < p.upper() && (!found || best < p.upper())) {
                best = p.upper();
                found = true;
            }
        }
        if (!found) {
            return false;
        }
        reach = best;
        first = false;
    }
    return true;
}

} // namespace compspec
