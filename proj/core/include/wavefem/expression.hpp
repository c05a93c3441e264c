#pragma once

#include <string>
#include <vector>

namespace wavefem {

/// Compiled arithmetic expression in the variables x, y, t.
///
/// Grammar: numbers, x, y, t, pi, + - * / ^ (right associative), unary minus,
/// sin cos exp abs sqrt, parentheses. '^' binds tighter than unary minus, so
/// -x^2 is -(x^2). Multiplication must be written explicitly (2*x, not 2x).
///
/// Evaluation follows IEEE arithmetic: 1/0 is inf, sqrt(-1) is nan. Callers
/// that must reject such values check the result (the time stepper aborts on
/// the first non-finite state).
class Expression {
  public:
    Expression() = default;

    double eval(double x, double y, double t) const;

    /// Whether the expression references t (rejected in spatial slots).
    bool uses_t() const { return uses_t_; }

    /// Whether the expression references x or y (rejected in constant slots).
    bool uses_xy() const { return uses_xy_; }

    /// The source text the expression was parsed from.
    const std::string& text() const { return text_; }

    bool empty() const { return program_.empty(); }

  private:
    enum class Op : unsigned char {
        push_const,
        push_x,
        push_y,
        push_t,
        add,
        sub,
        mul,
        div,
        pow,
        neg,
        sin,
        cos,
        exp,
        abs,
        sqrt,
    };

    struct Instr {
        Op op;
        double value = 0.0;
    };

    std::vector<Instr> program_;
    std::string text_;
    bool uses_t_ = false;
    bool uses_xy_ = false;

    friend class ExpressionParser;
};

/// Parses text into an Expression. Throws std::invalid_argument with the
/// offending 1-based character position on any syntax error.
Expression parse_expression(const std::string& text);

}  // namespace wavefem
