#include "wavefem/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace wavefem {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxStack = 64;

}  // namespace

double Expression::eval(double x, double y, double t) const {
    double stack[kMaxStack];
    int top = 0;
    for (const Instr& in : program_) {
        switch (in.op) {
            case Op::push_const: stack[top++] = in.value; break;
            case Op::push_x: stack[top++] = x; break;
            case Op::push_y: stack[top++] = y; break;
            case Op::push_t: stack[top++] = t; break;
            case Op::add: top--; stack[top - 1] += stack[top]; break;
            case Op::sub: top--; stack[top - 1] -= stack[top]; break;
            case Op::mul: top--; stack[top - 1] *= stack[top]; break;
            case Op::div: top--; stack[top - 1] /= stack[top]; break;
            case Op::pow: top--; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
            case Op::neg: stack[top - 1] = -stack[top - 1]; break;
            case Op::sin: stack[top - 1] = std::sin(stack[top - 1]); break;
            case Op::cos: stack[top - 1] = std::cos(stack[top - 1]); break;
            case Op::exp: stack[top - 1] = std::exp(stack[top - 1]); break;
            case Op::abs: stack[top - 1] = std::fabs(stack[top - 1]); break;
            case Op::sqrt: stack[top - 1] = std::sqrt(stack[top - 1]); break;
        }
    }
    return top == 1 ? stack[0] : 0.0;
}

/// Recursive descent over the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := primary ('^' factor)?
///   primary := number | name | name '(' expr ')' | '(' expr ')'
/// Stack depth is bounded during parsing so eval can use a fixed array.
class ExpressionParser {
  public:
    explicit ExpressionParser(const std::string& text) : text_(text) {}

    Expression parse() {
        Expression e;
        e.text_ = text_;
        out_ = &e;
        pos_ = 0;
        depth_ = 0;
        max_depth_ = 0;
        skip_ws();
        if (pos_ >= text_.size()) fail("empty expression");
        parse_expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        if (max_depth_ > kMaxStack) fail("expression too deeply nested");
        return e;
    }

  private:
    const std::string& text_;
    Expression* out_ = nullptr;
    std::size_t pos_ = 0;
    int depth_ = 0;
    int max_depth_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at position " + std::to_string(pos_ + 1) +
                                    " in '" + text_ + "': " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) pos_++;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            pos_++;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void emit(Expression::Op op, double value = 0.0) {
        out_->program_.push_back({op, value});
        switch (op) {
            case Expression::Op::push_const:
            case Expression::Op::push_x:
            case Expression::Op::push_y:
            case Expression::Op::push_t:
                depth_++;
                if (depth_ > max_depth_) max_depth_ = depth_;
                break;
            case Expression::Op::add:
            case Expression::Op::sub:
            case Expression::Op::mul:
            case Expression::Op::div:
            case Expression::Op::pow:
                depth_--;
                break;
            default: break;  // unary ops keep the depth
        }
    }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (accept('+')) {
                parse_term();
                emit(Expression::Op::add);
            } else if (accept('-')) {
                parse_term();
                emit(Expression::Op::sub);
            } else {
                return;
            }
        }
    }

    void parse_term() {
        parse_factor();
        for (;;) {
            if (accept('*')) {
                parse_factor();
                emit(Expression::Op::mul);
            } else if (accept('/')) {
                parse_factor();
                emit(Expression::Op::div);
            } else {
                return;
            }
        }
    }

    void parse_factor() {
        if (accept('-')) {
            parse_factor();
            emit(Expression::Op::neg);
        } else {
            parse_power();
        }
    }

    void parse_power() {
        parse_primary();
        if (accept('^')) {
            parse_factor();
            emit(Expression::Op::pow);
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a value");
        const char c = text_[pos_];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            parse_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            parse_name();
            return;
        }
        if (c == '(') {
            pos_++;
            parse_expr();
            expect(')');
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void parse_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        emit(Expression::Op::push_const, value);
    }

    void parse_name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            pos_++;
        const std::string name = text_.substr(start, pos_ - start);

        if (accept('(')) {
            parse_expr();
            expect(')');
            if (name == "sin") emit(Expression::Op::sin);
            else if (name == "cos") emit(Expression::Op::cos);
            else if (name == "exp") emit(Expression::Op::exp);
            else if (name == "abs") emit(Expression::Op::abs);
            else if (name == "sqrt") emit(Expression::Op::sqrt);
            else {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            return;
        }

        if (name == "x") {
            emit(Expression::Op::push_x);
            out_->uses_xy_ = true;
        } else if (name == "y") {
            emit(Expression::Op::push_y);
            out_->uses_xy_ = true;
        } else if (name == "t") {
            emit(Expression::Op::push_t);
            out_->uses_t_ = true;
        } else if (name == "pi") emit(Expression::Op::push_const, kPi);
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
    }
};

Expression parse_expression(const std::string& text) { return ExpressionParser(text).parse(); }

}  // namespace wavefem
