#ifndef COMPSPEC_JSON_HPP
#define COMPSPEC_JSON_HPP

// JSON documents for reports. Exact values are strings ("p/q"); Gaussian
// rationals with an imaginary part are ["re", "im"]; floats are decimal
// strings with enough digits to round-trip at their precision.

#include <nlohmann/json.hpp>

#include <compspec/continuation.hpp>
#include <compspec/taxonomy.hpp>

namespace compspec
{

using Json = nlohmann::ordered_json;

constexpr int json_version = 1;

Json to_json(const Rational &q);
Json to_json(const GaussRational &z);
Json to_json(const BigFloat &x);
Json to_json(const BigComplex &z);
Json to_json(const RealValue &v);
Json to_json(const RealNumber &x);
Json to_json(const SpectralSet &s);
Json to_json(const DimLabel &d);
Json to_json(const EigenDim &e);
Json to_json(const ClassificationReport &r);
Json to_json(const TruncatedSeries &s);
Json to_json(const RadiusVerdict &v);
Json to_json(const LocalSolution &s);
Json to_json(const Evaluation &e);
Json to_json(const CoveringObstruction &c);
Json to_json(const WitnessReport &w);

// Inverses; throw SyntaxError on malformed documents.
Rational rational_from_json(const Json &j);
GaussRational gauss_from_json(const Json &j);
BigFloat bigfloat_from_json(const Json &j, mpfr_prec_t prec);
BigComplex bigcomplex_from_json(const Json &j, mpfr_prec_t prec);
RealValue real_value_from_json(const Json &j, mpfr_prec_t prec);
RealNumber real_number_from_json(const Json &j);
SpectralSet spectral_set_from_json(const Json &j);
DimLabel dim_label_from_json(const Json &j);
EigenDim eigen_dim_from_json(const Json &j);
ClassificationReport report_from_json(const Json &j);
TruncatedSeries series_from_json(const Json &j);
RadiusVerdict radius_from_json(const Json &j);
LocalSolution local_solution_from_json(const Json &j);
Evaluation evaluation_from_json(const Json &j);
CoveringObstruction obstruction_from_json(const Json &j);
WitnessReport witness_from_json(const Json &j, mpfr_prec_t prec);

} // namespace compspec

#endif
