#pragma once

#include "arithdyn/bigint.hpp"
#include "arithdyn/error.hpp"

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace arithdyn {

/// Parsed arithmetic expression over Q in named variables.
///
/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/' | <implicit>) unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' exponent)?
///   exponent:= ['-'] integer | '(' ['-'] integer ')'
///   primary := integer | identifier | '(' expr ')'
/// Implicit multiplication applies when a factor is directly followed by an
/// identifier or '(' (so "2x^2" reads as 2*x^2).
struct Expr {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    Int number;
    std::string name;
    long exponent = 0;
    std::size_t position = 0;
    std::vector<std::shared_ptr<const Expr>> children;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expression(std::string_view text);

/// Evaluates `e` in a field V. `literal` lifts integers, `variable` resolves
/// identifiers (and should throw for unknown names).
template <class V>
V evaluate(const Expr& e, const std::function<V(const Int&)>& literal,
           const std::function<V(const Expr&)>& variable) {
    auto rec = [&](const ExprPtr& c) { return evaluate<V>(*c, literal, variable); };
    switch (e.kind) {
        case Expr::Kind::Number: return literal(e.number);
        case Expr::Kind::Variable: return variable(e);
        case Expr::Kind::Add: return rec(e.children[0]) + rec(e.children[1]);
        case Expr::Kind::Sub: return rec(e.children[0]) - rec(e.children[1]);
        case Expr::Kind::Mul: return rec(e.children[0]) * rec(e.children[1]);
        case Expr::Kind::Div: {
            V den = rec(e.children[1]);
            if (den == literal(Int(0))) throw ParseError("division by zero", e.position);
            return rec(e.children[0]) / den;
        }
        case Expr::Kind::Neg: return literal(Int(0)) - rec(e.children[0]);
        case Expr::Kind::Pow: {
            V base = rec(e.children[0]);
            unsigned long k = static_cast<unsigned long>(e.exponent < 0 ? -e.exponent : e.exponent);
            V result = literal(Int(1));
            while (k) {
                if (k & 1) result = result * base;
                k >>= 1;
                if (k) base = base * base;
            }
            if (e.exponent < 0) {
                if (result == literal(Int(0))) throw ParseError("division by zero", e.position);
                result = literal(Int(1)) / result;
            }
            return result;
        }
    }
    throw InvariantError("unknown expression node");
}

}  // namespace arithdyn
