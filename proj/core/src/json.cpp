#include <compspec/json.hpp>

#include <compspec/errors.hpp>

namespace compspec
{

namespace
{

[[noreturn]] void malformed(const std::string &what)
{
    throw SyntaxError(0, "malformed JSON: " + what);
}

const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        malformed(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::string text(const Json &j)
{
    if (!j.is_string()) {
        malformed("expected a string, got " + j.dump());
    }
    return j.get<std::string>();
}

int digits_for(mpfr_prec_t prec)
{
    return static_cast<int>(static_cast<double>(prec) * 0.30103) + 2;
}

Json rationals(const std::vector<Rational> &v)
{
    Json out = Json::array();
    for (const auto &q : v) {
        out.push_back(to_json(q));
    }
    return out;
}

std::vector<Rational> rationals_from(const Json &j)
{
    std::vector<Rational> out;
    for (const auto &e : j) {
        out.push_back(rational_from_json(e));
    }
    return out;
}

Json strings(const std::vector<std::string> &v)
{
    Json out = Json::array();
    for (const auto &s : v) {
        out.push_back(s);
    }
    return out;
}

std::vector<std::string> strings_from(const Json &j)
{
    std::vector<std::string> out;
    for (const auto &e : j) {
        out.push_back(text(e));
    }
    return out;
}

Json piece_json(const IntervalUnion &u)
{
    Json out = Json::array();
    for (const auto &i : u.parts()) {
        out.push_back(i.to_string());
    }
    return out;
}

IntervalUnion piece_from(const Json &j)
{
    std::vector<Interval> parts;
    for (const auto &e : j) {
        parts.push_back(parse_interval(text(e)));
    }
    return IntervalUnion(std::move(parts));
}

} // namespace

Json to_json(const Rational &q)
{
    return to_string(q);
}

Json to_json(const GaussRational &z)
{
    if (z.is_real()) {
        return to_json(z.re);
    }
    return Json::array({to_json(z.re), to_json(z.im)});
}

Json to_json(const BigFloat &x)
{
    return x.is_zero() ? std::string("0") : x.to_string(digits_for(x.precision()));
}

Json to_json(const BigComplex &z)
{
    return Json::array({to_json(z.re), to_json(z.im)});
}

Json to_json(const RealValue &v)
{
    if (v.is_exact()) {
        return to_json(v.rational());
    }
    return Json{{"float", to_json(v.approx())}, {"precision", v.approx().precision()}};
}

Json to_json(const RealNumber &x)
{
    switch (x.kind()) {
    case RealNumber::Kind::rational:
        return to_json(*x.as_rational());
    case RealNumber::Kind::surd: {
        const QuadSurd &s = x.surd();
        return Json{{"surd", Json::array({to_json(s.rational_part()), to_json(s.surd_coeff()), to_json(s.radicand())})}};
    }
    case RealNumber::Kind::algebraic: {
        const auto &img = x.image();
        return Json{{"root_of", rationals(img.alpha.poly().coeffs())},
                    {"in", Json::array({to_json(img.alpha.lo()), to_json(img.alpha.hi())})},
                    {"image", rationals(img.g.coeffs())}};
    }
    case RealNumber::Kind::enclosure:
        return Json{{"enclosure", Json::array({to_json(x.bounds().lo), to_json(x.bounds().hi)})}};
    }
    return nullptr;
}

Json to_json(const SpectralSet &s)
{
    using K = SpectralSet::Kind;
    auto parts = [&] {
        Json out = Json::array();
        for (const auto &p : s.parts()) {
            out.push_back(to_json(p));
        }
        return out;
    };
    switch (s.kind()) {
    case K::all_plane:
        return Json{{"kind", "all_plane"}};
    case K::punctured_plane:
        return Json{{"kind", "punctured_plane"}};
    case K::powers:
        return Json{{"kind", "powers"}, {"ratio", to_json(s.ratio())}, {"include_zero", s.include_zero()}};
    case K::finite: {
        Json values = Json::array();
        for (const auto &v : s.values()) {
            values.push_back(to_json(v));
        }
        return Json{{"kind", "finite"}, {"values", values}};
    }
    case K::closed_disk:
        return Json{{"kind", "closed_disk"}, {"radius", to_json(s.radius())}};
    case K::real_ray:
        return Json{{"kind", "real_ray"}, {"from", to_json(s.from())}, {"closed", s.closed()}};
    case K::union_of:
        return Json{{"kind", "union"}, {"parts", parts()}};
    case K::superset_of:
        return Json{{"kind", "superset_of"}, {"parts", parts()}};
    }
    return nullptr;
}

Json to_json(const DimLabel &d)
{
    switch (d.kind) {
    case DimLabel::Kind::finite:
        return Json{{"kind", "finite"}, {"k", d.k}};
    case DimLabel::Kind::infinite:
        return Json{{"kind", "infinite"}, {"tag", d.tag}};
    case DimLabel::Kind::whole_space:
        return Json{{"kind", "whole_space"}, {"tag", d.tag}};
    }
    return nullptr;
}

Json to_json(const EigenDim &e)
{
    Json out = Json::array();
    for (const auto &r : e.rules) {
        out.push_back(Json{{"on", r.on ? to_json(*r.on) : Json(nullptr)}, {"dim", to_json(r.dim)}});
    }
    return out;
}

Json to_json(const ClassificationReport &r)
{
    return Json{{"version", json_version},
                {"case", r.case_id},
                {"sigma", to_json(r.sigma)},
                {"sigma_p", to_json(r.sigma_p)},
                {"eigen", to_json(r.eigen)},
                {"resolved", r.resolved},
                {"open_problem", r.open_problem ? Json(*r.open_problem) : Json(nullptr)},
                {"certified", r.certified},
                {"citations", strings(r.citations)},
                {"notes", strings(r.notes)}};
}

Json to_json(const TruncatedSeries &s)
{
    Json coeffs = Json::array();
    if (s.exact()) {
        for (const auto &c : s.exact_coeffs()) {
            coeffs.push_back(to_json(c));
        }
    } else {
        for (const auto &c : s.float_coeffs()) {
            coeffs.push_back(to_json(c));
        }
    }
    return Json{{"center", to_json(s.center())},
                {"order", s.order()},
                {"exact", s.exact()},
                {"precision", s.exact() ? Json(nullptr) : Json(s.precision())},
                {"coefficients", coeffs}};
}

Json to_json(const RadiusVerdict &v)
{
    return Json{{"verdict", to_string(v.kind)},
                {"r_est", v.r_est ? Json(*v.r_est) : Json(nullptr)},
                {"infinite", v.infinite},
                {"c", v.c ? to_json(*v.c) : Json(nullptr)},
                {"range", v.kind == RadiusVerdict::Kind::diverges ? Json::array({v.from, v.to}) : Json(nullptr)},
                {"reason", v.reason}};
}

Json to_json(const LocalSolution &s)
{
    return Json{{"version", json_version},   {"lambda", to_json(s.lambda)},         {"gamma", s.gamma},
                {"multiplier", to_json(s.multiplier)}, {"resonances", s.resonances}, {"radius", to_json(s.radius)},
                {"series", to_json(s.series)}};
}

Json to_json(const Evaluation &e)
{
    return Json{{"version", json_version},
                {"value", to_json(e.value)},
                {"exact", e.exact ? to_json(*e.exact) : Json(nullptr)},
                {"depth", e.depth},
                {"chain", strings(e.chain)},
                {"residual", to_json(e.residual)},
                {"error_bound", to_json(e.error_bound)},
                {"precision", e.precision}};
}

Json to_json(const CoveringObstruction &c)
{
    Json pieces = Json::array();
    for (const auto &p : c.pieces) {
        pieces.push_back(piece_json(p));
    }
    Json kernels = Json::array();
    for (const auto &k : c.piece_kernels) {
        kernels.push_back(to_json(k));
    }
    Json inter = Json::array();
    for (const auto &i : c.intersections) {
        inter.push_back(Json{{"first", i.first}, {"second", i.second}, {"set", piece_json(i.set)}, {"kernel", to_json(i.kernel)}});
    }
    return Json{{"version", json_version},  {"lambda", to_json(c.lambda)},   {"pieces", pieces},
                {"piece_kernels", kernels}, {"intersections", inter},       {"verdict", to_string(c.verdict)},
                {"certified", c.certified}, {"notes", strings(c.notes)}};
}

Json to_json(const WitnessReport &w)
{
    Json orbit = Json::array();
    for (const auto &x : w.orbit) {
        orbit.push_back(to_json(x));
    }
    return Json{{"version", json_version},
                {"mu", to_json(w.mu)},
                {"lambda", to_json(w.lambda)},
                {"k", w.k},
                {"c", to_json(w.c)},
                {"n", w.n},
                {"gamma", w.gamma},
                {"orbit", orbit},
                {"lhs", to_json(w.lhs)},
                {"gamma_at_1", to_json(w.gamma_at_1)},
                {"tail", to_json(w.tail)},
                {"bound", to_json(w.bound)},
                {"margin", to_json(w.margin)},
                {"gamma0_range", Json::array({to_json(w.gamma0_range.first), to_json(w.gamma0_range.second)})},
                {"notes", strings(w.notes)}};
}

Rational rational_from_json(const Json &j)
{
    return parse_rational(text(j));
}

GaussRational gauss_from_json(const Json &j)
{
    if (j.is_array()) {
        if (j.size() != 2) {
            malformed("complex value needs [re, im]");
        }
        return GaussRational(rational_from_json(j[0]), rational_from_json(j[1]));
    }
    return GaussRational(rational_from_json(j));
}

BigFloat bigfloat_from_json(const Json &j, mpfr_prec_t prec)
{
    return BigFloat::from_string(text(j), prec);
}

BigComplex bigcomplex_from_json(const Json &j, mpfr_prec_t prec)
{
    if (!j.is_array() || j.size() != 2) {
        malformed("complex float needs [re, im]");
    }
    return BigComplex(bigfloat_from_json(j[0], prec), bigfloat_from_json(j[1], prec));
}

RealValue real_value_from_json(const Json &j, mpfr_prec_t prec)
{
    if (j.is_string()) {
        return RealValue(rational_from_json(j));
    }
    const mpfr_prec_t p = j.contains("precision") ? j.at("precision").get<mpfr_prec_t>() : prec;
    return RealValue(bigfloat_from_json(field(j, "float"), p));
}

RealNumber real_number_from_json(const Json &j)
{
    if (j.is_string()) {
        return RealNumber(rational_from_json(j));
    }
    if (j.contains("surd")) {
        const Json &s = j.at("surd");
        return RealNumber(QuadSurd(rational_from_json(s.at(0)), rational_from_json(s.at(1)), rational_from_json(s.at(2))));
    }
    if (j.contains("root_of")) {
        const Json &in = field(j, "in");
        RealAlgebraic alpha(Polynomial(rationals_from(j.at("root_of"))), rational_from_json(in.at(0)), rational_from_json(in.at(1)));
        return RealNumber(std::move(alpha), Polynomial(rationals_from(field(j, "image"))));
    }
    if (j.contains("enclosure")) {
        const Json &e = j.at("enclosure");
        return RealNumber::enclosure(rational_from_json(e.at(0)), rational_from_json(e.at(1)));
    }
    malformed("unknown real number " + j.dump());
}

SpectralSet spectral_set_from_json(const Json &j)
{
    const std::string kind = text(field(j, "kind"));
    auto parts = [&] {
        std::vector<SpectralSet> out;
        for (const auto &p : field(j, "parts")) {
            out.push_back(spectral_set_from_json(p));
        }
        return out;
    };
    if (kind == "all_plane") {
        return SpectralSet::all_plane();
    }
    if (kind == "punctured_plane") {
        return SpectralSet::punctured_plane();
    }
    if (kind == "powers") {
        return SpectralSet::powers(real_number_from_json(field(j, "ratio")), field(j, "include_zero").get<bool>());
    }
    if (kind == "finite") {
        std::vector<GaussRational> values;
        for (const auto &v : field(j, "values")) {
            values.push_back(gauss_from_json(v));
        }
        return SpectralSet::finite(std::move(values));
    }
    if (kind == "closed_disk") {
        return SpectralSet::closed_disk(rational_from_json(field(j, "radius")));
    }
    if (kind == "real_ray") {
        return SpectralSet::real_ray(rational_from_json(field(j, "from")), field(j, "closed").get<bool>());
    }
    if (kind == "union") {
        return SpectralSet::union_of(parts());
    }
    if (kind == "superset_of") {
        return SpectralSet::superset_of(parts());
    }
    malformed("unknown set kind '" + kind + "'");
}

DimLabel dim_label_from_json(const Json &j)
{
    const std::string kind = text(field(j, "kind"));
    if (kind == "finite") {
        return DimLabel::finite(field(j, "k").get<unsigned long>());
    }
    if (kind == "infinite") {
        return DimLabel::infinite(text(field(j, "tag")));
    }
    if (kind == "whole_space") {
        return DimLabel::whole_space();
    }
    malformed("unknown dimension kind '" + kind + "'");
}

EigenDim eigen_dim_from_json(const Json &j)
{
    EigenDim out;
    for (const auto &r : j) {
        EigenRule rule;
        const Json &on = field(r, "on");
        if (!on.is_null()) {
            rule.on = spectral_set_from_json(on);
        }
        rule.dim = dim_label_from_json(field(r, "dim"));
        out.rules.push_back(std::move(rule));
    }
    return out;
}

ClassificationReport report_from_json(const Json &j)
{
    ClassificationReport r;
    r.case_id = text(field(j, "case"));
    r.sigma = spectral_set_from_json(field(j, "sigma"));
    r.sigma_p = spectral_set_from_json(field(j, "sigma_p"));
    r.eigen = eigen_dim_from_json(field(j, "eigen"));
    r.resolved = field(j, "resolved").get<bool>();
    if (const Json &o = field(j, "open_problem"); !o.is_null()) {
        r.open_problem = text(o);
    }
    r.certified = field(j, "certified").get<bool>();
    r.citations = strings_from(field(j, "citations"));
    r.notes = strings_from(field(j, "notes"));
    return r;
}

TruncatedSeries series_from_json(const Json &j)
{
    const bool exact = field(j, "exact").get<bool>();
    if (exact) {
        std::vector<GaussRational> c;
        for (const auto &e : field(j, "coefficients")) {
            c.push_back(gauss_from_json(e));
        }
        return TruncatedSeries(real_value_from_json(field(j, "center"), 256), std::move(c));
    }
    const auto prec = field(j, "precision").get<mpfr_prec_t>();
    std::vector<BigComplex> c;
    for (const auto &e : field(j, "coefficients")) {
        c.push_back(bigcomplex_from_json(e, prec));
    }
    return TruncatedSeries(real_value_from_json(field(j, "center"), prec), std::move(c), prec);
}

RadiusVerdict radius_from_json(const Json &j)
{
    RadiusVerdict v;
    const std::string kind = text(field(j, "verdict"));
    if (kind == "converges") {
        v.kind = RadiusVerdict::Kind::converges;
    } else if (kind == "diverges") {
        v.kind = RadiusVerdict::Kind::diverges;
    } else if (kind == "inconclusive") {
        v.kind = RadiusVerdict::Kind::inconclusive;
    } else {
        malformed("unknown verdict '" + kind + "'");
    }
    if (const Json &r = field(j, "r_est"); !r.is_null()) {
        v.r_est = r.get<double>();
    }
    v.infinite = field(j, "infinite").get<bool>();
    if (const Json &c = field(j, "c"); !c.is_null()) {
        v.c = rational_from_json(c);
    }
    if (const Json &range = field(j, "range"); !range.is_null()) {
        v.from = range.at(0).get<std::size_t>();
        v.to = range.at(1).get<std::size_t>();
    }
    v.reason = text(field(j, "reason"));
    return v;
}

LocalSolution local_solution_from_json(const Json &j)
{
    LocalSolution s;
    s.lambda = gauss_from_json(field(j, "lambda"));
    s.gamma = text(field(j, "gamma"));
    s.multiplier = real_value_from_json(field(j, "multiplier"), 256);
    s.resonances = field(j, "resonances").get<std::vector<unsigned>>();
    s.radius = radius_from_json(field(j, "radius"));
    s.series = series_from_json(field(j, "series"));
    return s;
}

Evaluation evaluation_from_json(const Json &j)
{
    Evaluation e;
    e.precision = field(j, "precision").get<mpfr_prec_t>();
    e.value = bigcomplex_from_json(field(j, "value"), e.precision);
    if (const Json &x = field(j, "exact"); !x.is_null()) {
        e.exact = gauss_from_json(x);
    }
    e.depth = field(j, "depth").get<unsigned long>();
    e.chain = strings_from(field(j, "chain"));
    e.residual = bigfloat_from_json(field(j, "residual"), e.precision);
    e.error_bound = bigfloat_from_json(field(j, "error_bound"), e.precision);
    return e;
}

CoveringObstruction obstruction_from_json(const Json &j)
{
    CoveringObstruction c;
    c.lambda = gauss_from_json(field(j, "lambda"));
    for (const auto &p : field(j, "pieces")) {
        c.pieces.push_back(piece_from(p));
    }
    for (const auto &k : field(j, "piece_kernels")) {
        c.piece_kernels.push_back(dim_label_from_json(k));
    }
    for (const auto &i : field(j, "intersections")) {
        c.intersections.push_back({field(i, "first").get<std::size_t>(), field(i, "second").get<std::size_t>(),
                                   piece_from(field(i, "set")), dim_label_from_json(field(i, "kernel"))});
    }
    const std::string verdict = text(field(j, "verdict"));
    c.verdict = verdict == "NotSurjective" ? CoveringObstruction::Verdict::not_surjective : CoveringObstruction::Verdict::inconclusive;
    c.certified = field(j, "certified").get<bool>();
    c.notes = strings_from(field(j, "notes"));
    return c;
}

WitnessReport witness_from_json(const Json &j, mpfr_prec_t prec)
{
    WitnessReport w;
    w.mu = rational_from_json(field(j, "mu"));
    w.lambda = gauss_from_json(field(j, "lambda"));
    w.k = field(j, "k").get<unsigned>();
    w.c = rational_from_json(field(j, "c"));
    w.n = field(j, "n").get<std::size_t>();
    w.gamma = text(field(j, "gamma"));
    for (const auto &x : field(j, "orbit")) {
        w.orbit.push_back(bigfloat_from_json(x, prec));
    }
    w.lhs = bigcomplex_from_json(field(j, "lhs"), prec);
    w.gamma_at_1 = bigfloat_from_json(field(j, "gamma_at_1"), prec);
    w.tail = bigcomplex_from_json(field(j, "tail"), prec);
    w.bound = bigfloat_from_json(field(j, "bound"), prec);
    w.margin = bigfloat_from_json(field(j, "margin"), prec);
    const Json &range = field(j, "gamma0_range");
    if (!range.is_array() || range.size() != 2) {
        malformed("gamma0_range needs [lo, hi]");
    }
    w.gamma0_range = {rational_from_json(range[0]), rational_from_json(range[1])};
    w.notes = strings_from(field(j, "notes"));
    return w;
}

} // namespace compspec
