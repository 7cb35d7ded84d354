#ifndef COMPSPEC_ERRORS_HPP
#define COMPSPEC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compspec
{

// Base of every typed failure raised by the library. `name()` is the stable
// identifier used in reports and CLI diagnostics.
class Error : public std::runtime_error
{
public:
    Error(std::string name, const std::string &what, bool mathematical)
        : std::runtime_error(what), name_(std::move(name)), mathematical_(mathematical)
    {
    }

    const std::string &name() const noexcept { return name_; }
    // True for failures that are facts about the mathematics (resonance,
    // escaping orbits, ...) rather than malformed input.
    bool mathematical() const noexcept { return mathematical_; }

private:
    std::string name_;
    bool mathematical_;
};

#define COMPSPEC_DEFINE_ERROR(Name, Math)                                                                         \
    class Name : public Error                                                                                        \
    {                                                                                                                \
    public:                                                                                                          \
        explicit Name(const std::string &what) : Error(#Name, what, Math) {}                                         \
    };

// Input problems.
class SyntaxError : public Error
{
public:
    SyntaxError(std::size_t position, const std::string &what)
        : Error("SyntaxError", what + " at position " + std::to_string(position), false), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

COMPSPEC_DEFINE_ERROR(InvalidParameter, false)
COMPSPEC_DEFINE_ERROR(ConstantSymbol, false)
COMPSPEC_DEFINE_ERROR(DomainError, false)
COMPSPEC_DEFINE_ERROR(NotSelfMap, false)
COMPSPEC_DEFINE_ERROR(CenterMismatch, false)
COMPSPEC_DEFINE_ERROR(DegreeOverflow, false)

// Mathematical outcomes.
COMPSPEC_DEFINE_ERROR(NotADiffeomorphism, true)
COMPSPEC_DEFINE_ERROR(HypothesisViolation, true)
COMPSPEC_DEFINE_ERROR(InvarianceFailure, true)
COMPSPEC_DEFINE_ERROR(Unresolved, true)
COMPSPEC_DEFINE_ERROR(ZeroLambda, true)
COMPSPEC_DEFINE_ERROR(NeutralOrSuperattracting, true)
COMPSPEC_DEFINE_ERROR(PrecisionLoss, true)
COMPSPEC_DEFINE_ERROR(BranchDomain, true)
COMPSPEC_DEFINE_ERROR(ReflectedUncovered, true)
COMPSPEC_DEFINE_ERROR(NoConvergentLocalSolution, true)

class OrbitEscape : public Error
{
public:
    OrbitEscape(long step, const std::string &what)
        : Error("OrbitEscape", what, true), step_(step)
    {
    }
    long step() const noexcept { return step_; }

private:
    long step_;
};

class BasinEscape : public Error
{
public:
    BasinEscape(long depth, const std::string &what)
        : Error("BasinEscape", what, true), depth_(depth)
    {
    }
    long depth() const noexcept { return depth_; }

private:
    long depth_;
};

class ResonantEigenvalue : public Error
{
public:
    ResonantEigenvalue(unsigned order, const std::string &what)
        : Error("ResonantEigenvalue", what, true), order_(order)
    {
    }
    unsigned order() const noexcept { return order_; }

private:
    unsigned order_;
};

#undef COMPSPEC_DEFINE_ERROR

} // namespace compspec

#endif
