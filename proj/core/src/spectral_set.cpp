#include <compspec/spectral_set.hpp>

namespace compspec
{

namespace
{

constexpr unsigned long max_power_steps = 4096;

bool is_zero(const GaussRational &z)
{
    return z.re == 0 && z.im == 0;
}

Tri tri(bool b)
{
    return b ? Tri::yes : Tri::no;
}

Tri powers_contain(const RealNumber &m, const Rational &q)
{
    if (q == 1) {
        return Tri::yes;
    }
    if (q == 0) {
        const auto c = m.compare(0);
        return c ? tri(*c == 0) : Tri::unknown;
    }
    const auto size = m.compare_abs(1);
    if (!size) {
        return Tri::unknown;
    }
    if (*size == 0) {
        // m = +-1 (or an enclosure that happens to decide |m| = 1)
        const auto c = m.compare(q);
        return c ? tri(*c == 0) : Tri::unknown;
    }
    const Rational aq = abs(q);
    for (unsigned long n = 1; n <= max_power_steps; ++n) {
        const RealNumber p = m.pow(n);
        const auto c = p.compare(q);
        if (!c) {
            return Tri::unknown;
        }
        if (*c == 0) {
            return Tri::yes;
        }
        const auto ca = p.compare_abs(aq);
        if (!ca) {
            return Tri::unknown;
        }
        // |m^n| moves monotonically away from 1; stop once it passed |q|.
        if ((*size > 0 && *ca > 0) || (*size < 0 && *ca < 0)) {
            return Tri::no;
        }
    }
    return Tri::unknown;
}

} // namespace

SpectralSet SpectralSet::all_plane()
{
    return SpectralSet(Kind::all_plane);
}

SpectralSet SpectralSet::punctured_plane()
{
    return SpectralSet(Kind::punctured_plane);
}

SpectralSet SpectralSet::powers(RealNumber ratio, bool include_zero)
{
    SpectralSet s(Kind::powers);
    s.ratio_ = std::move(ratio);
    s.flag_ = include_zero;
    return s;
}

SpectralSet SpectralSet::finite(std::vector<GaussRational> values)
{
    SpectralSet s(Kind::finite);
    s.values_ = std::move(values);
    return s;
}

SpectralSet SpectralSet::closed_disk(Rational radius)
{
    SpectralSet s(Kind::closed_disk);
    s.bound_ = std::move(radius);
    return s;
}

SpectralSet SpectralSet::real_ray(Rational from, bool closed)
{
    SpectralSet s(Kind::real_ray);
    s.bound_ = std::move(from);
    s.flag_ = closed;
    return s;
}

SpectralSet SpectralSet::union_of(std::vector<SpectralSet> parts)
{
    SpectralSet s(Kind::union_of);
    s.parts_ = std::move(parts);
    return s;
}

SpectralSet SpectralSet::superset_of(std::vector<SpectralSet> parts)
{
    SpectralSet s(Kind::superset_of);
    s.parts_ = std::move(parts);
    return s;
}

Tri SpectralSet::contains(const GaussRational &lambda) const
{
    switch (kind_) {
    case Kind::all_plane:
        return Tri::yes;
    case Kind::punctured_plane:
        return tri(!is_zero(lambda));
    case Kind::powers:
        if (is_zero(lambda) && flag_) {
            return Tri::yes;
        }
        if (lambda.im != 0) {
            return Tri::no;
        }
        return powers_contain(ratio_, lambda.re);
    case Kind::finite:
        for (const auto &v : values_) {
            if (v == lambda) {
                return Tri::yes;
            }
        }
        return Tri::no;
    case Kind::closed_disk:
        return tri(lambda.re * lambda.re + lambda.im * lambda.im <= bound_ * bound_);
    case Kind::real_ray:
        return tri(lambda.im == 0 && (flag_ ? lambda.re >= bound_ : lambda.re > bound_));
    case Kind::union_of:
    case Kind::superset_of: {
        bool unknown = false;
        for (const auto &p : parts_) {
            const Tri t = p.contains(lambda);
            if (t == Tri::yes) {
                return Tri::yes;
            }
            unknown = unknown || t == Tri::unknown;
        }
        if (kind_ == Kind::superset_of) {
            return Tri::unknown;
        }
        return unknown ? Tri::unknown : Tri::no;
    }
    }
    return Tri::unknown;
}

std::string SpectralSet::to_string() const
{
    auto join = [this](const std::string &sep) {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            out += (i ? sep : "") + parts_[i].to_string();
        }
        return out;
    };
    switch (kind_) {
    case Kind::all_plane:
        return "C";
    case Kind::punctured_plane:
        return "C\\{0}";
    case Kind::powers:
        return "{(" + ratio_.to_string() + ")^n}" + (flag_ ? " u {0}" : "");
    case Kind::finite: {
        std::string out = "{";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            out += (i ? ", " : "") + compspec::to_string(values_[i]);
        }
        return out + "}";
    }
    case Kind::closed_disk:
        return "{|z| <= " + compspec::to_string(bound_) + "}";
    case Kind::real_ray:
        return std::string(flag_ ? "[" : "(") + compspec::to_string(bound_) + ", inf)";
    case Kind::union_of:
        return join(" u ");
    case Kind::superset_of:
        return "contains " + join(" u ") + " (partial)";
    }
    return "?";
}

} // namespace compspec
