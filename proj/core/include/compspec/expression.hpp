#ifndef COMPSPEC_EXPRESSION_HPP
#define COMPSPEC_EXPRESSION_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <compspec/numbers.hpp>
#include <compspec/polynomial.hpp>

namespace compspec
{

struct Node;
using Expr = std::shared_ptr<const Node>;

// Expression tree in one variable x. `inverse` is internal: it denotes
// delta^{-1}(arg) for a strictly monotone delta onto the real line and is
// produced by conjugation and symbol inversion, never by the parser.
struct Node {
    enum class Kind { constant, variable, add, sub, mul, neg, pow, exp, arctan, sin, inverse };

    Kind kind = Kind::constant;
    Rational value;        // constant
    unsigned exponent = 0; // pow
    Expr lhs;              // unary argument / left operand / inverse: delta
    Expr rhs;              // right operand / inverse: argument
    int monotone = 0;      // inverse: sign of delta'
};

namespace expr
{

Expr constant(const Rational &q);
Expr variable();
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr a, unsigned n);
Expr exp(Expr a);
Expr arctan(Expr a);
Expr sin(Expr a);
Expr inverse(Expr delta, int monotone, Expr arg);
Expr from_polynomial(const Polynomial &p);

// Replace x by `inner`.
Expr substitute(const Expr &e, const Expr &inner);

} // namespace expr

// Grammar:
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := base ("^" nonneg-integer)?
//   base   := rational | "x" | "(" expr ")" | ("exp"|"arctan"|"sin") "(" expr ")"
// Throws SyntaxError with the offending position.
Expr parse_expression(std::string_view text);

std::string to_string(const Expr &e);

bool depends_on_x(const Expr &e);
bool contains_inverse(const Expr &e);

// Exact polynomial when the tree folds to one (exp(0) = 1, arctan(0) = 0,
// sin(0) = 0 are folded); nullopt otherwise.
std::optional<Polynomial> as_polynomial(const Expr &e);

// Exact value at a rational point when every transcendental node is hit at
// an argument where its value is rational.
std::optional<Rational> eval_exact(const Expr &e, const Rational &x);

struct Dual {
    BigFloat value;
    BigFloat slope;
};

BigFloat eval(const Expr &e, const BigFloat &x);
// Value and first derivative.
Dual eval_dual(const Expr &e, const BigFloat &x);

// Solve delta(y) = v for strictly monotone delta onto the real line.
BigFloat solve_monotone(const Expr &delta, int monotone, const BigFloat &v);

// Taylor coefficients through `order` at a rational center. The exact
// variant returns nullopt when some node value is irrational there.
std::optional<std::vector<Rational>> jet_exact(const Expr &e, const Rational &center, std::size_t order);
std::vector<BigFloat> jet_float(const Expr &e, const BigFloat &center, std::size_t order);

// Behaviour of e(x) as x tends to an end of the real line or to a finite
// rational point (continuity gives the value there).
struct Limit {
    enum class Kind { pos_inf, neg_inf, finite, unknown };
    Kind kind = Kind::unknown;
    std::optional<Rational> exact; // finite with rational value
    BigFloat approx;               // finite value
};

Limit limit_at(const Expr &e, const ExtRational &point, mpfr_prec_t prec);

} // namespace compspec

#endif
