#include <compspec/taxonomy.hpp>

#include <algorithm>

#include <compspec/errors.hpp>

namespace compspec
{

std::string DimLabel::to_string() const
{
    switch (kind) {
    case Kind::finite:
        return std::to_string(k);
    case Kind::infinite:
    case Kind::whole_space:
        return tag;
    }
    return "?";
}

std::optional<DimLabel> EigenDim::at(const GaussRational &lambda) const
{
    for (const auto &r : rules) {
        if (!r.on) {
            return r.dim;
        }
        const Tri t = r.on->contains(lambda);
        if (t == Tri::unknown) {
            return std::nullopt;
        }
        if (t == Tri::yes) {
            return r.dim;
        }
    }
    return DimLabel::finite(0);
}

std::string to_string(PointLeaf leaf)
{
    switch (leaf) {
    case PointLeaf::a:
        return "a";
    case PointLeaf::b1:
        return "b1";
    case PointLeaf::b2:
        return "b2";
    case PointLeaf::b3:
        return "b3";
    case PointLeaf::c:
        return "c";
    }
    return "?";
}

std::string to_string(CoveringObstruction::Verdict v)
{
    return v == CoveringObstruction::Verdict::not_surjective ? "NotSurjective" : "Inconclusive";
}

namespace
{

SpectralSet finite_set(std::initializer_list<long> values)
{
    std::vector<GaussRational> v;
    for (long x : values) {
        v.emplace_back(x);
    }
    return SpectralSet::finite(std::move(v));
}

EigenDim eigen_for(PointLeaf leaf, const SpectralSet &set)
{
    switch (leaf) {
    case PointLeaf::a:
        return {{{set, DimLabel::infinite("A(T)")}, {std::nullopt, DimLabel::finite(0)}}};
    case PointLeaf::b1:
        return {{{set, DimLabel::finite(1)}, {std::nullopt, DimLabel::finite(0)}}};
    case PointLeaf::b2:
        return {{{set, DimLabel::infinite("A_+(R)")}, {std::nullopt, DimLabel::finite(0)}}};
    case PointLeaf::b3:
        return {{{set, DimLabel::whole_space()}, {std::nullopt, DimLabel::finite(0)}}};
    case PointLeaf::c:
        break;
    }
    return {{{set, DimLabel::finite(1)}, {std::nullopt, DimLabel::finite(0)}}};
}

PointSpectrum leaf_result(PointLeaf leaf, SpectralSet set, std::optional<RealNumber> m = std::nullopt)
{
    PointSpectrum out;
    out.leaf = leaf;
    out.eigen = eigen_for(leaf, set);
    out.set = std::move(set);
    out.multiplier = std::move(m);
    return out;
}

bool unique_sq_fixed_point(const SymbolAnalysis &a)
{
    return a.second_iterate_available && !a.fixed_points_sq.all_fixed && a.fixed_points_sq.points.size() == 1 &&
           a.fixed_points.points.size() == 1;
}

// phi = A (x - c)^s + c with A having a real (s-1)-th root: an affine
// conjugate of x^s. Degree 2 is left to the quadratic normal form.
bool is_power_map_conjugate(const Polynomial &p)
{
    const int s = p.degree();
    if (s < 3) {
        return false;
    }
    const Rational &a = p.leading();
    const Rational c = -p.coeff(s - 1) / (a * s);
    const Polynomial shifted = Polynomial({-c, Rational(1)}).pow(s) * Polynomial::constant(a) + Polynomial::constant(c);
    if (!(shifted == p)) {
        return false;
    }
    return (s - 1) % 2 == 1 || a > 0;
}

std::optional<QuadSurd> quadratic_mu(const AnalyticSymbol &phi)
{
    if (!phi.is_polynomial() || phi.polynomial().degree() != 2 || !phi.domain().is_real_line()) {
        return std::nullopt;
    }
    const Polynomial &p = phi.polynomial();
    const QuadraticNormalForm nf = normalize_quadratic(p.coeff(2), p.coeff(1), p.coeff(0));
    if (!nf.has_fixed_points) {
        return std::nullopt;
    }
    return nf.mu;
}

ClassificationReport unresolved_report(const SymbolAnalysis &a, std::string why)
{
    ClassificationReport r;
    r.case_id = "unresolved";
    r.resolved = false;
    r.sigma = SpectralSet::superset_of({spectrum_lower_bound(a)});
    try {
        const PointSpectrum ps = point_spectrum(a);
        r.sigma_p = ps.set;
        r.eigen = ps.eigen;
    } catch (const Unresolved &) {
        r.sigma_p = SpectralSet::superset_of({finite_set({1})});
        r.eigen = eigen_for(PointLeaf::c, finite_set({1}));
    }
    r.citations = {"Prop 2.1(1)", "Prop 2.1(2)", "Thm 2.2"};
    r.notes.push_back(std::move(why));
    return r;
}

bool all_hyperbolic(const SymbolAnalysis &a)
{
    for (const auto &p : a.fixed_points.points) {
        if (p.kind == FixedPointRecord::Kind::neutral || p.kind == FixedPointRecord::Kind::neutral_unresolved) {
            return false;
        }
    }
    return true;
}

ClassificationReport classify_analysis(const AnalyticSymbol &phi, const SymbolAnalysis &a)
{
    ClassificationReport r;
    const Tri diffeo = a.is_diffeo.value;

    if (a.is_identity) {
        r.case_id = "Thm 2.2(b3)";
        r.sigma_p = finite_set({1});
        r.sigma = finite_set({1});
        r.eigen = eigen_for(PointLeaf::b3, r.sigma_p);
        r.citations = {"Thm 2.2(b3)"};
        return r;
    }

    if (a.fixed_points.points.empty()) {
        if (diffeo == Tri::yes) {
            r.case_id = "Cor 3.1(a)";
            r.sigma_p = SpectralSet::punctured_plane();
            r.sigma = SpectralSet::punctured_plane();
            r.eigen = eigen_for(PointLeaf::a, r.sigma_p);
            r.citations = {"Cor 3.1(a)", "Thm 2.2(a)", "Prop 2.1(1)"};
            return r;
        }
        if (diffeo == Tri::no && a.critical_bounded_away == Tri::yes) {
            r.case_id = "Cor 3.1(b)";
            r.sigma_p = SpectralSet::punctured_plane();
            r.sigma = SpectralSet::all_plane();
            r.eigen = eigen_for(PointLeaf::a, r.sigma_p);
            r.citations = {"Cor 3.1(b)", "Thm 2.2(a)", "Prop 2.1(1)"};
            return r;
        }
        if (diffeo == Tri::no && a.critical_bounded_away == Tri::no) {
            r.case_id = "Problem 3.2";
            r.sigma_p = finite_set({1});
            r.sigma = SpectralSet::superset_of({finite_set({0, 1})});
            r.eigen = eigen_for(PointLeaf::c, r.sigma_p);
            r.resolved = false;
            r.open_problem = "Problem 3.2";
            r.citations = {"Thm 2.2(c)", "Prop 2.1(1)"};
            return r;
        }
        return unresolved_report(a, "diffeomorphism or bounded-away test undecided");
    }

    if (a.is_involution) {
        r.case_id = "Thm 2.2(b2)";
        r.sigma_p = finite_set({-1, 1});
        r.sigma = finite_set({-1, 1});
        r.eigen = eigen_for(PointLeaf::b2, r.sigma_p);
        r.citations = {"Thm 2.2(b2)", "derived: (C - l)(C + l) = (1 - l^2) I"};
        r.notes.push_back("sigma from the resolvent identity (C - l)^{-1} = (C + l) / (1 - l^2) for l != +-1");
        return r;
    }

    if (unique_sq_fixed_point(a)) {
        const FixedPointRecord &u = a.fixed_points.points.front();
        using K = FixedPointRecord::Kind;
        if (u.kind == K::neutral_unresolved) {
            return unresolved_report(a, "multiplier enclosure straddles |m| = 1");
        }
        if (u.kind == K::superattracting || u.kind == K::attracting) {
            if (diffeo == Tri::unknown) {
                return unresolved_report(a, "diffeomorphism test undecided");
            }
            const PointSpectrum ps = point_spectrum(a);
            r.case_id = "Cor 3.6";
            r.sigma_p = ps.set;
            r.eigen = ps.eigen;
            r.sigma = SpectralSet::powers(u.multiplier, diffeo == Tri::no);
            r.citations = {"Cor 3.6", "Thm 2.2(b1)", "Thm 3.4", "Prop 2.1(1)"};
            return r;
        }
        if (u.kind == K::repelling) {
            if (diffeo == Tri::yes) {
                const PointSpectrum ps = point_spectrum(a);
                r.case_id = "Cor 3.7";
                r.sigma_p = ps.set;
                r.eigen = ps.eigen;
                r.sigma = SpectralSet::powers(u.multiplier, false);
                r.citations = {"Cor 3.7", "Thm 2.2(b1)"};
                return r;
            }
            if (diffeo == Tri::no) {
                const PointSpectrum ps = point_spectrum(a);
                r.case_id = "Problem 3.8";
                r.sigma_p = ps.set;
                r.eigen = ps.eigen;
                r.sigma = SpectralSet::superset_of({SpectralSet::powers(u.multiplier, true)});
                r.resolved = false;
                r.open_problem = "Problem 3.8";
                r.citations = {"Prop 2.1(1)", "Prop 2.1(2)", "Thm 2.2"};
                return r;
            }
            return unresolved_report(a, "diffeomorphism test undecided");
        }
        // |m| = 1
        if (const auto mu = quadratic_mu(phi)) {
            return quadratic_spectrum(*mu);
        }
        return unresolved_report(a, "neutral fixed point outside the quadratic family");
    }

    // Several fixed points (or a 2-cycle).
    if (diffeo == Tri::yes && a.fixed_points.points.size() > 1 && all_hyperbolic(a)) {
        r.case_id = "Prop 3.9";
        r.sigma_p = finite_set({1});
        r.sigma = SpectralSet::punctured_plane();
        r.eigen = eigen_for(PointLeaf::c, r.sigma_p);
        r.citations = {"Prop 3.9", "Prop 2.1(1)", "Thm 2.2(c)"};
        return r;
    }
    if (const auto mu = quadratic_mu(phi)) {
        return quadratic_spectrum(*mu);
    }
    if (phi.is_polynomial() && phi.domain().is_real_line() && is_power_map_conjugate(phi.polynomial())) {
        r.case_id = "Prop 3.12";
        r.sigma_p = finite_set({1});
        r.sigma = SpectralSet::all_plane();
        r.eigen = eigen_for(PointLeaf::c, r.sigma_p);
        r.citations = {"Prop 3.12", "Lemma 3.13", "Thm 2.2(c)", "Prop 2.1(1)"};
        return r;
    }
    return unresolved_report(a, "no leaf applies; reporting the lower bound");
}

} // namespace

PointSpectrum point_spectrum(const SymbolAnalysis &a)
{
    if (a.is_identity) {
        return leaf_result(PointLeaf::b3, finite_set({1}));
    }
    if (a.is_involution) {
        return leaf_result(PointLeaf::b2, finite_set({-1, 1}));
    }
    if (a.fixed_points.points.empty()) {
        switch (a.critical_bounded_away) {
        case Tri::yes:
            return leaf_result(PointLeaf::a, SpectralSet::punctured_plane());
        case Tri::no:
            return leaf_result(PointLeaf::c, finite_set({1}));
        case Tri::unknown:
            break;
        }
        throw Unresolved("critical points near the end of J could not be bounded away");
    }
    if (!a.second_iterate_available) {
        throw Unresolved("second iterate exceeds the degree cap");
    }
    if (unique_sq_fixed_point(a)) {
        const FixedPointRecord &u = a.fixed_points.points.front();
        using K = FixedPointRecord::Kind;
        switch (u.kind) {
        case K::neutral_unresolved:
            throw Unresolved("multiplier enclosure straddles |m| = 1");
        case K::attracting:
            return leaf_result(PointLeaf::b1, SpectralSet::powers(u.multiplier, false), u.multiplier);
        case K::repelling:
            if (a.critical_points.empty()) {
                return leaf_result(PointLeaf::b1, SpectralSet::powers(u.multiplier, false), u.multiplier);
            }
            break;
        default:
            break;
        }
    }
    return leaf_result(PointLeaf::c, finite_set({1}));
}

SpectralSet spectrum_lower_bound(const SymbolAnalysis &a)
{
    std::vector<SpectralSet> parts;
    if (a.is_diffeo.value == Tri::no) {
        parts.push_back(finite_set({0}));
    }
    try {
        parts.push_back(point_spectrum(a).set);
    } catch (const Unresolved &) {
        parts.push_back(finite_set({1}));
    }
    for (const auto &p : a.fixed_points.points) {
        if (p.kind == FixedPointRecord::Kind::attracting || p.kind == FixedPointRecord::Kind::repelling) {
            parts.push_back(SpectralSet::powers(p.multiplier, false));
        }
    }
    if (parts.size() == 1) {
        return parts.front();
    }
    return SpectralSet::union_of(std::move(parts));
}

ClassificationReport quadratic_spectrum(const QuadSurd &mu)
{
    if (mu < QuadSurd(1)) {
        throw InvalidParameter("quadratic normal form needs mu >= 1, got " + mu.to_string());
    }
    ClassificationReport r;
    r.sigma_p = finite_set({1});
    r.eigen = eigen_for(PointLeaf::c, r.sigma_p);
    if (mu == QuadSurd(1)) {
        r.case_id = "Prop 4.1";
        r.sigma = SpectralSet::superset_of({finite_set({0}), SpectralSet::real_ray(1, true)});
        r.resolved = false;
        r.open_problem = "Prop 4.1 partial";
        r.citations = {"Prop 4.1", "Lemma 3.13", "Thm 2.2(c)", "Prop 2.1(1)"};
        return r;
    }
    if (mu <= QuadSurd(2)) {
        r.case_id = "Prop 4.4";
        r.sigma = SpectralSet::all_plane();
        r.citations = {"Prop 4.4", "Lemma 3.13", "Thm 2.2(c)", "Thm 3.11"};
        if (mu == QuadSurd(2)) {
            r.citations.push_back("Prop 3.12");
        }
        r.notes.push_back("kernels follow Thm 2.2: dim ker(C - l) = 0 for l != 1");
        return r;
    }
    r.case_id = "Prop 4.5";
    r.sigma = SpectralSet::superset_of({SpectralSet::closed_disk(1), SpectralSet::powers(RealNumber(mu), false),
                                        SpectralSet::powers(RealNumber(QuadSurd(2) - mu), false)});
    r.resolved = false;
    r.open_problem = "Prop 4.5 partial";
    r.citations = {"Prop 4.5", "Lemma 3.13", "Thm 2.2(c)", "Prop 2.1(2)"};
    return r;
}

ClassificationReport spectrum(const AnalyticSymbol &phi, const SymbolAnalysis &analysis)
{
    ClassificationReport r = classify_analysis(phi, analysis);
    r.certified = analysis.certified && phi.certified();
    if (!r.certified) {
        r.notes.push_back("rests on sampled (uncertified) analysis");
    }
    return r;
}

ClassificationReport classify(const AnalyticSymbol &phi, unsigned degree_cap)
{
    const Provenance *p = phi.provenance();
    if (p && p->kind == Provenance::Kind::conjugate && !phi.is_polynomial()) {
        ClassificationReport r = classify(*p->base, degree_cap);
        const bool certified = r.certified && p->delta->certified();
        if (r.certified && !certified) {
            r.notes.push_back("rests on sampled (uncertified) analysis");
        }
        r.certified = certified;
        return r;
    }
    return spectrum(phi, analyze(phi, degree_cap));
}

namespace
{

DimLabel interval_kernel(const AnalyticSymbol &phi, const Interval &u, const GaussRational &lambda, std::vector<std::string> *notes,
                         bool *certified)
{
    std::optional<AnalyticSymbol> restricted;
    try {
        restricted.emplace(phi.expr(), u);
    } catch (const NotSelfMap &e) {
        throw InvarianceFailure(std::string("piece ") + u.to_string() + " is not invariant: " + e.what());
    }
    if (certified) {
        *certified = *certified && restricted->certified();
    }
    const SymbolAnalysis a = analyze(*restricted);
    if (certified) {
        *certified = *certified && a.certified;
    }
    const PointSpectrum ps = point_spectrum(a);
    if (lambda.re == 0 && lambda.im == 0) {
        const bool super = unique_sq_fixed_point(a) && a.fixed_points.points.front().kind == FixedPointRecord::Kind::superattracting;
        if (notes) {
            notes->push_back(super ? "lambda = 0 with a superattracting fixed point: dimension one by convention"
                                   : "lambda = 0: dimension zero by convention");
        }
        return DimLabel::finite(super ? 1 : 0);
    }
    const auto d = ps.eigen.at(lambda);
    if (!d) {
        throw Unresolved("membership of " + to_string(lambda) + " in " + ps.set.to_string() + " undecided");
    }
    return *d;
}

DimLabel sum(const DimLabel &a, const DimLabel &b)
{
    if (a.is_finite() && b.is_finite()) {
        return DimLabel::finite(a.k + b.k);
    }
    return a.is_finite() ? b : a;
}

DimLabel piece_kernel(const AnalyticSymbol &phi, const IntervalUnion &piece, const GaussRational &lambda, std::vector<std::string> *notes,
                      bool *certified)
{
    const auto &parts = piece.parts();
    if (parts.empty()) {
        throw InvalidParameter("empty piece");
    }
    if (parts.size() == 1) {
        return interval_kernel(phi, parts.front(), lambda, notes, certified);
    }
    std::vector<bool> invariant(parts.size(), false);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
            check_image_within(phi.expr(), parts[i], parts[i]);
            invariant[i] = true;
        } catch (const NotSelfMap &) {
        }
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!invariant[i]) {
            continue;
        }
        bool determines = true;
        bool exact = true;
        for (std::size_t j = 0; j < parts.size() && determines; ++j) {
            if (j == i) {
                continue;
            }
            try {
                exact = check_image_within(phi.expr(), parts[j], parts[i]) && exact;
            } catch (const NotSelfMap &) {
                determines = false;
            }
        }
        if (determines) {
            if (certified) {
                *certified = *certified && exact;
            }
            if (notes) {
                notes->push_back("piece " + piece.to_string() + " reduced to " + parts[i].to_string());
            }
            return interval_kernel(phi, parts[i], lambda, notes, certified);
        }
    }
    if (std::all_of(invariant.begin(), invariant.end(), [](bool b) { return b; })) {
        DimLabel total = DimLabel::finite(0);
        for (const auto &c : parts) {
            total = sum(total, interval_kernel(phi, c, lambda, notes, certified));
        }
        return total;
    }
    throw InvarianceFailure("piece " + piece.to_string() + " is neither invariant componentwise nor reducible to one component");
}

} // namespace

DimLabel kernel_dim(const AnalyticSymbol &phi, const IntervalUnion &piece, const GaussRational &lambda, std::vector<std::string> *notes)
{
    return piece_kernel(phi, piece, lambda, notes, nullptr);
}

CoveringObstruction covering_obstruction(const AnalyticSymbol &phi, const GaussRational &lambda, const std::vector<IntervalUnion> &pieces)
{
    if (pieces.empty()) {
        throw InvalidParameter("no pieces given");
    }
    if (!covers(pieces, phi.domain())) {
        throw InvalidParameter("pieces do not cover " + phi.domain().to_string());
    }
    CoveringObstruction out;
    out.lambda = lambda;
    out.pieces = pieces;
    out.certified = phi.certified();
    for (const auto &p : pieces) {
        out.piece_kernels.push_back(piece_kernel(phi, p, lambda, &out.notes, &out.certified));
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            IntervalUnion common = pieces[i].intersect(pieces[j]);
            if (common.empty()) {
                continue;
            }
            DimLabel k = piece_kernel(phi, common, lambda, &out.notes, &out.certified);
            out.intersections.push_back({i, j, std::move(common), std::move(k)});
        }
    }
    const bool pieces_finite =
        std::all_of(out.piece_kernels.begin(), out.piece_kernels.end(), [](const DimLabel &d) { return d.is_finite(); });
    const bool some_infinite =
        std::any_of(out.intersections.begin(), out.intersections.end(), [](const auto &x) { return !x.kernel.is_finite(); });
    out.verdict = pieces_finite && some_infinite ? CoveringObstruction::Verdict::not_surjective : CoveringObstruction::Verdict::inconclusive;
    return out;
}

std::vector<IntervalUnion> parse_pieces(std::string_view text)
{
    std::vector<IntervalUnion> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        std::vector<Interval> comps;
        std::size_t s = start;
        while (s <= end) {
            const std::size_t e = std::min(text.find('|', s), end);
            comps.push_back(parse_interval(text.substr(s, e - s)));
            s = e + 1;
        }
        out.emplace_back(std::move(comps));
        start = end + 1;
    }
    return out;
}

} // namespace compspec
