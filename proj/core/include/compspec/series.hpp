#ifndef COMPSPEC_SERIES_HPP
#define COMPSPEC_SERIES_HPP

#include <optional>
#include <string>
#include <vector>

#include <compspec/expression.hpp>
#include <compspec/symbol.hpp>
#include <compspec/truncated_series.hpp>

namespace compspec
{

struct RadiusVerdict {
    enum class Kind { converges, diverges, inconclusive };
    Kind kind = Kind::inconclusive;
    // Converges: estimated radius (infinite for a polynomial).
    std::optional<double> r_est;
    bool infinite = false;
    // Diverges: c with |f_n| >= (n-1)! c^n checked exactly on [from, to].
    std::optional<Rational> c;
    std::size_t from = 0;
    std::size_t to = 0;
    std::string reason;
};

std::string to_string(RadiusVerdict::Kind k);

// Unique truncated formal solution of f(phi(x)) - lambda f(x) = gamma(x) at
// a fixed point u.
struct LocalSolution {
    TruncatedSeries series;
    GaussRational lambda;
    std::string gamma;
    RealValue multiplier;
    // Orders n with lambda = m^n; empty whenever a solution is returned.
    std::vector<unsigned> resonances;
    RadiusVerdict radius;
};

// Taylor coefficients of an expression (constants allowed) at a point.
TruncatedSeries expr_jet(const Expr &e, const RealValue &center, std::size_t order, mpfr_prec_t prec);

// f o phi for phi fixing the common center. Throws CenterMismatch.
TruncatedSeries series_compose(const TruncatedSeries &f, const TruncatedSeries &phi_jet);

// f o phi - lambda f - gamma through the common order.
TruncatedSeries resolvent_residual(const TruncatedSeries &phi_jet, const TruncatedSeries &f, const GaussRational &lambda,
                                   const TruncatedSeries &gamma_jet);

// Throws ZeroLambda, ResonantEigenvalue(n), InvalidParameter when u is not
// a fixed point.
LocalSolution solve_formal(const AnalyticSymbol &phi, const RealValue &u, const GaussRational &lambda, const Expr &gamma,
                           std::size_t order, mpfr_prec_t prec = 256);

// Coefficients for phi = -x^2 + x, gamma = x by the closed recurrence
// f_0 = 0, f_1 = 1/(1-l), f_n = 1/(1-l) sum_j C(n-j, j) (-1)^(j-1) f_(n-j).
std::vector<GaussRational> quadratic_id_recurrence(const GaussRational &lambda, std::size_t order);

// Entry n: lambda != m^n.
std::vector<bool> smajdor_condition(const GaussRational &lambda, const Rational &m, std::size_t order);

// Koenigs function: sigma(u) = 0, sigma'(u) = 1, sigma o phi = m sigma.
// Throws NeutralOrSuperattracting unless 0 < |m| < 1.
TruncatedSeries koenigs(const AnalyticSymbol &phi, const RealValue &u, std::size_t order, mpfr_prec_t prec = 256);

struct Eigenfunction {
    TruncatedSeries series;
    RealValue eigenvalue;
};

// sigma^n, eigenvalue m^n.
Eigenfunction eigenfunction(const AnalyticSymbol &phi, const RealValue &u, unsigned n, std::size_t order, mpfr_prec_t prec = 256);

// Root-test radius estimate over the tail half; divergence certificates only
// for exact series. Needs order >= 16.
RadiusVerdict estimate_radius(const TruncatedSeries &s);

} // namespace compspec

#endif
