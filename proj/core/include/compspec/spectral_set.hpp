#ifndef COMPSPEC_SPECTRAL_SET_HPP
#define COMPSPEC_SPECTRAL_SET_HPP

#include <optional>
#include <string>
#include <vector>

#include <compspec/numbers.hpp>
#include <compspec/real_number.hpp>
#include <compspec/rootwork.hpp>

namespace compspec
{

// Structured subset of the complex plane.
class SpectralSet
{
public:
    enum class Kind { all_plane, punctured_plane, powers, finite, closed_disk, real_ray, union_of, superset_of };

    static SpectralSet all_plane();
    static SpectralSet punctured_plane();
    // {m^n : n >= 0}, plus 0 when include_zero.
    static SpectralSet powers(RealNumber ratio, bool include_zero);
    static SpectralSet finite(std::vector<GaussRational> values);
    static SpectralSet closed_disk(Rational radius);
    // [from, inf) when closed, (from, inf) otherwise.
    static SpectralSet real_ray(Rational from, bool closed);
    static SpectralSet union_of(std::vector<SpectralSet> parts);
    // The spectrum contains these parts; the remainder is not resolved.
    static SpectralSet superset_of(std::vector<SpectralSet> parts);

    Kind kind() const { return kind_; }
    const RealNumber &ratio() const { return ratio_; }
    bool include_zero() const { return flag_; }
    bool closed() const { return flag_; }
    const std::vector<GaussRational> &values() const { return values_; }
    const Rational &radius() const { return bound_; }
    const Rational &from() const { return bound_; }
    const std::vector<SpectralSet> &parts() const { return parts_; }
    bool resolved() const { return kind_ != Kind::superset_of; }

    // Exact membership. superset_of answers yes when a listed part contains
    // lambda and unknown otherwise.
    Tri contains(const GaussRational &lambda) const;
    std::string to_string() const;

private:
    explicit SpectralSet(Kind k) : kind_(k) {}

    Kind kind_;
    RealNumber ratio_;
    bool flag_ = false;
    std::vector<GaussRational> values_;
    Rational bound_;
    std::vector<SpectralSet> parts_;
};

} // namespace compspec

#endif
