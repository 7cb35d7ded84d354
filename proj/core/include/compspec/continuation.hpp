#ifndef COMPSPEC_CONTINUATION_HPP
#define COMPSPEC_CONTINUATION_HPP

#include <optional>
#include <string>
#include <vector>

#include <compspec/series.hpp>

namespace compspec
{

struct ExtensionRule {
    enum class Kind { forward_orbit, inverse_branch, mirror };
    Kind kind = Kind::forward_orbit;
    unsigned long max_depth = 10000;
    // inverse_branch: monotone branch of phi (psi maps into its closure).
    // mirror: the side of the axis containing the fixed point.
    Interval region;
    std::optional<Rational> axis; // mirror
    std::string descriptor;
};

std::string to_string(ExtensionRule::Kind k);

struct GlobalOptions {
    std::size_t order = 64;
    mpfr_prec_t precision = 256;
    unsigned long max_depth = 10000;
};

// Local solution at a fixed point plus the rules that carry it over J.
// Exact mode: the truncated series is a polynomial solving the equation
// identically; values at rational points are then exact.
class GlobalSolution
{
public:
    // Throws NoConvergentLocalSolution, plus the errors of solve_formal.
    static GlobalSolution build(const AnalyticSymbol &phi, const RealValue &u, const GaussRational &lambda, const Expr &gamma,
                                const GlobalOptions &options = {});

    const AnalyticSymbol &phi() const { return phi_; }
    const RealValue &fixed_point() const { return u_; }
    const GaussRational &lambda() const { return local_.lambda; }
    const Expr &gamma() const { return gamma_; }
    const LocalSolution &local() const { return local_; }
    // Invariant neighbourhood (possibly one-sided) entered by forward orbits.
    const Interval &core() const { return core_; }
    bool core_certified() const { return core_certified_; }
    // Where the local series is trusted; contains the core.
    const Interval &series_region() const { return series_region_; }
    const std::vector<ExtensionRule> &rules() const { return rules_; }
    bool exact() const { return exact_; }
    mpfr_prec_t precision() const { return precision_; }
    std::vector<std::string> notes() const { return notes_; }

private:
    AnalyticSymbol phi_;
    RealValue u_;
    Expr gamma_;
    LocalSolution local_;
    Interval core_;
    Interval series_region_;
    bool core_certified_ = true;
    std::vector<ExtensionRule> rules_;
    bool exact_ = false;
    mpfr_prec_t precision_ = 256;
    std::vector<std::string> notes_;

    GlobalSolution(AnalyticSymbol phi) : phi_(std::move(phi)) {}
};

struct Evaluation {
    BigComplex value;
    std::optional<GaussRational> exact;
    unsigned long depth = 0;
    std::vector<std::string> chain;
    // Pointwise residual of the equation at the points used, plus the series
    // residual where the local series was entered.
    BigFloat residual;
    // Residual amplified along the unwind (|lambda|^-n forward, |lambda|^n
    // inverse) plus rounding.
    BigFloat error_bound;
    mpfr_prec_t precision = 0;
};

// Throws BasinEscape, DomainError, PrecisionLoss.
Evaluation extend_forward(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec);
// Throws BranchDomain, BasinEscape, PrecisionLoss.
Evaluation extend_inverse_branch(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec);
// Throws ReflectedUncovered.
Evaluation extend_mirror(const GlobalSolution &sol, const RealValue &y, mpfr_prec_t prec);
// Rules in order: forward, inverse branch, mirror. Rethrows the forward
// failure when nothing applies.
Evaluation evaluate(const GlobalSolution &sol, const RealValue &x, mpfr_prec_t prec);

// psi of the inverse-branch rule.
BigFloat branch_inverse(const GlobalSolution &sol, const BigFloat &x);

// x_1 = 1, x_n = 2 x_(n-1) / (mu + sqrt(mu^2 - 4 x_(n-1))), so phi(x_n) = x_(n-1)
// and phi(x_1) = mu - 1 for phi = -x^2 + mu x. Throws InvalidParameter unless mu > 2.
std::vector<BigFloat> preimage_orbit(const Rational &mu, std::size_t n, mpfr_prec_t prec);

struct OrbitSumCheck {
    BigComplex lhs;
    BigComplex rhs;
    BigFloat residual;
    std::optional<GaussRational> exact_residual;
};

// f(phi^[n](x)) against lambda^n f(x) + sum_j lambda^(n-1-j) gamma(phi^[j](x)).
OrbitSumCheck orbit_sum_check(const GlobalSolution &sol, const RealValue &x, unsigned long n, mpfr_prec_t prec);
// The same identity at x = x_n of the preimage orbit, with the left side
// gamma(mu - 1) / (1 - lambda) from the fixed point mu - 1. phi must be
// -x^2 + mu x with mu > 2.
OrbitSumCheck telescoping_check(const GlobalSolution &sol, unsigned long n, mpfr_prec_t prec);

struct WitnessReport {
    Rational mu;
    GaussRational lambda;
    unsigned k = 0;
    Rational c;
    std::size_t n = 0;
    std::string gamma;
    std::vector<BigFloat> orbit;
    BigComplex lhs;       // gamma(mu - 1) / (1 - lambda)
    BigFloat gamma_at_1;  // gamma(1)
    BigComplex tail;      // sum_{i>=2} lambda^(i-1) gamma(x_i)
    BigFloat bound;       // 6c
    BigFloat margin;      // |lhs - gamma(1)| - 6c
    std::pair<Rational, Rational> gamma0_range; // |gamma_0| on [0, 1]
    std::vector<std::string> notes;
};

// gamma = x^k gamma_0 with gamma_0 affine, gamma_0(mu - 1) = 0, gamma_0(1) = 1.
// Throws InvalidParameter on mu <= 2, |lambda| > 1, lambda in {0, 1},
// c outside (0, 1/6), k = 0 or n = 0.
WitnessReport witness_demo(const Rational &mu, const GaussRational &lambda, unsigned k, const Rational &c, std::size_t n,
                           mpfr_prec_t prec = 256);

} // namespace compspec

#endif
