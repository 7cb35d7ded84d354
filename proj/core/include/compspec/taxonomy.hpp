#ifndef COMPSPEC_TAXONOMY_HPP
#define COMPSPEC_TAXONOMY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <compspec/rootwork.hpp>
#include <compspec/spectral_set.hpp>
#include <compspec/symbol.hpp>

namespace compspec
{

// Dimension of an eigenspace / kernel. Infinite dimensions carry the tag of
// the model space ("A(T)", "A_+(R)"); whole_space is the full A(J).
struct DimLabel {
    enum class Kind { finite, infinite, whole_space };
    Kind kind = Kind::finite;
    unsigned long k = 0;
    std::string tag;

    static DimLabel finite(unsigned long k) { return {Kind::finite, k, {}}; }
    static DimLabel infinite(std::string tag) { return {Kind::infinite, 0, std::move(tag)}; }
    static DimLabel whole_space() { return {Kind::whole_space, 0, "A(J)"}; }
    bool is_finite() const { return kind == Kind::finite; }
    std::string to_string() const;
    friend bool operator==(const DimLabel &, const DimLabel &) = default;
};

// Ordered rules; the first whose set contains lambda fires, a rule without
// a set matches every lambda.
struct EigenRule {
    std::optional<SpectralSet> on;
    DimLabel dim;
};

struct EigenDim {
    std::vector<EigenRule> rules;
    // nullopt when a membership test is undecided.
    std::optional<DimLabel> at(const GaussRational &lambda) const;
};

// Leaves of the point-spectrum split.
enum class PointLeaf { a, b1, b2, b3, c };
std::string to_string(PointLeaf leaf);

struct PointSpectrum {
    PointLeaf leaf = PointLeaf::c;
    SpectralSet set = SpectralSet::finite({GaussRational(1)});
    EigenDim eigen;
    std::optional<RealNumber> multiplier; // b1 only
};

// Throws Unresolved when the leaf depends on an undecided fact (neutral?
// multiplier, unknown bounded-away test, missing second iterate).
PointSpectrum point_spectrum(const SymbolAnalysis &analysis);

// {0} (if not a diffeomorphism) u sigma_p u powers of every fixed point
// multiplier with |m| not in {0, 1}.
SpectralSet spectrum_lower_bound(const SymbolAnalysis &analysis);

struct ClassificationReport {
    std::string case_id;
    SpectralSet sigma_p = SpectralSet::finite({GaussRational(1)});
    SpectralSet sigma = SpectralSet::finite({GaussRational(1)});
    EigenDim eigen;
    bool resolved = true;
    std::optional<std::string> open_problem;
    bool certified = true;
    std::vector<std::string> citations;
    std::vector<std::string> notes;
};

ClassificationReport spectrum(const AnalyticSymbol &phi, const SymbolAnalysis &analysis);
// analyze + spectrum. Non-polynomial conjugates are classified through
// their base symbol.
ClassificationReport classify(const AnalyticSymbol &phi, unsigned degree_cap = default_degree_cap);
// Normal form -x^2 + mu x on the real line, mu >= 1.
ClassificationReport quadratic_spectrum(const QuadSurd &mu);

// Kernel of C_phi - lambda on A(U) for an invariant piece U. A piece with
// several components is reduced to one invariant component A that all other
// components are mapped into by phi. Throws InvarianceFailure / Unresolved.
DimLabel kernel_dim(const AnalyticSymbol &phi, const IntervalUnion &piece, const GaussRational &lambda,
                    std::vector<std::string> *notes = nullptr);

struct CoveringObstruction {
    enum class Verdict { not_surjective, inconclusive };
    struct Intersection {
        std::size_t first;
        std::size_t second;
        IntervalUnion set;
        DimLabel kernel;
    };

    GaussRational lambda;
    std::vector<IntervalUnion> pieces;
    std::vector<DimLabel> piece_kernels;
    std::vector<Intersection> intersections;
    Verdict verdict = Verdict::inconclusive;
    bool certified = true;
    std::vector<std::string> notes;
};

std::string to_string(CoveringObstruction::Verdict v);

CoveringObstruction covering_obstruction(const AnalyticSymbol &phi, const GaussRational &lambda,
                                         const std::vector<IntervalUnion> &pieces);

// "(lo,hi)|(lo,hi);(lo,hi)": pieces separated by ';', components by '|'.
std::vector<IntervalUnion> parse_pieces(std::string_view text);

} // namespace compspec

#endif
