#ifndef COMPSPEC_ROOTWORK_HPP
#define COMPSPEC_ROOTWORK_HPP

#include <optional>
#include <string>
#include <vector>

#include <compspec/real_number.hpp>
#include <compspec/symbol.hpp>

namespace compspec
{

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

struct FixedPointRecord {
    enum class Kind { superattracting, attracting, neutral, repelling, neutral_unresolved };

    RealNumber location;
    RealNumber multiplier;
    Kind kind = Kind::repelling;
};

std::string to_string(FixedPointRecord::Kind k);

struct FixedPointSet {
    // phi (or phi^[2]) is the identity on J.
    bool all_fixed = false;
    std::vector<FixedPointRecord> points;
    // Complete and exact (Sturm) rather than a sign-change scan.
    bool exhaustive = true;
};

struct DiffeoVerdict {
    Tri value = Tri::unknown;
    bool certified = true;
    std::string reason;
};

enum class SignVsId { above, below, not_applicable };
std::string to_string(SignVsId s);

struct SymbolAnalysis {
    FixedPointSet fixed_points;
    FixedPointSet fixed_points_sq;
    std::vector<RealNumber> critical_points;
    DiffeoVerdict is_diffeo;
    SignVsId sign_vs_id = SignVsId::not_applicable;
    Tri critical_bounded_away = Tri::unknown; // meaningful when no fixed points
    bool is_identity = false;
    bool is_involution = false;
    // False when phi^[2] exceeded the degree cap.
    bool second_iterate_available = true;
    bool certified = true;
    std::vector<std::string> notes;
};

constexpr unsigned default_degree_cap = 4096;

FixedPointSet find_fixed_points(const AnalyticSymbol &phi);
// Throws DegreeOverflow when deg(phi)^2 exceeds the cap.
FixedPointSet find_fixed_points_second_iterate(const AnalyticSymbol &phi, unsigned degree_cap = default_degree_cap);
std::vector<RealNumber> critical_points(const AnalyticSymbol &phi, bool *exhaustive = nullptr);
DiffeoVerdict is_diffeomorphism(const AnalyticSymbol &phi);

enum class End { lower, upper };
Tri critical_set_bounded_away(const AnalyticSymbol &phi, End end);

struct BasinVerdict {
    enum class Kind { certified, sampled_true, failed };
    Kind kind = Kind::failed;
    std::optional<RealValue> witness;
    std::string reason;
};

std::string to_string(BasinVerdict::Kind k);

// Throws HypothesisViolation unless phi(core) within core and closure(core)
// within J (a core end may sit on an end of J that phi fixes).
BasinVerdict attraction_basin_check(const AnalyticSymbol &phi, const Interval &core, unsigned long max_depth = 10000,
                                    std::size_t samples = 256, const std::vector<Rational> &probes = {});

SymbolAnalysis analyze(const AnalyticSymbol &phi, unsigned degree_cap = default_degree_cap);

// Multiplier kind with refinement up to 512 bits for float multipliers.
FixedPointRecord::Kind classify_multiplier(const RealNumber &m);

} // namespace compspec

#endif
