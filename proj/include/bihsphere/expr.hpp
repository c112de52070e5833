#pragma once

/// Immersion component expressions: a small arithmetic language over named
/// parameters, `pi`, and sin/cos/exp/sqrt/log, parsed by recursive descent
/// and evaluated over jets. ASTs are immutable after parsing.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bihsphere/jet.hpp"

namespace bihsphere {

enum class ExprKind { Number, Param, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class ExprFunc { Sin, Cos, Exp, Sqrt, Log };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    double number = 0.0;       // Number
    int param = -1;            // Param index into the declared parameter list
    std::string param_name;    // Param
    ExprFunc func{};           // Call
    int exponent = 0;          // Pow
    ExprPtr a, b;              // children (a only for Neg/Pow/Call)
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Evaluation failure (e.g. sqrt of a negative constant term), annotated with
// the offending subexpression.
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grammar:
//   expr   := term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := unary [ "^" int ]
//   unary  := "-" unary | primary
//   primary:= number | ident | func "(" expr ")" | "(" expr ")"
// with "^" binding tighter than unary minus and integer-literal exponents
// (possibly negative). Identifiers must be declared parameters or `pi`.
ExprPtr parse_expression(const std::string& src, std::span<const std::string> params);

// Precedence-aware rendering; parse(to_string(e)) reproduces e exactly.
std::string to_string(const Expr& e);
inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

bool expr_equal(const Expr& a, const Expr& b);

// Evaluate at a point: parameters become coordinate jets of the requested
// order. Deterministic; domain violations raise EvalError.
Jet eval_expression(const Expr& e, std::span<const double> point, int num_vars, int order);
inline Jet eval_expression(const ExprPtr& e, std::span<const double> point, int num_vars,
                           int order) {
    return eval_expression(*e, point, num_vars, order);
}

}  // namespace bihsphere
