#include "wavefem/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace wavefem {
namespace {

constexpr double kPi = 3.14159265358979323846;

double eval(const std::string& text, double x = 0.0, double y = 0.0, double t = 0.0) {
    return parse_expression(text).eval(x, y, t);
}

TEST(ExpressionTest, NumbersAndConstants) {
    EXPECT_DOUBLE_EQ(eval("42"), 42.0);
    EXPECT_DOUBLE_EQ(eval("3.5"), 3.5);
    EXPECT_DOUBLE_EQ(eval("1e-3"), 0.001);
    EXPECT_DOUBLE_EQ(eval("2.5E2"), 250.0);
    EXPECT_DOUBLE_EQ(eval("pi"), kPi);
}

TEST(ExpressionTest, Variables) {
    EXPECT_DOUBLE_EQ(eval("x", 2.0, 0.0, 0.0), 2.0);
    EXPECT_DOUBLE_EQ(eval("y", 0.0, -3.0, 0.0), -3.0);
    EXPECT_DOUBLE_EQ(eval("t", 0.0, 0.0, 7.0), 7.0);
    EXPECT_DOUBLE_EQ(eval("x*y + t", 2.0, 3.0, 4.0), 10.0);
}

TEST(ExpressionTest, ArithmeticPrecedence) {
    EXPECT_DOUBLE_EQ(eval("2+3*4"), 14.0);
    EXPECT_DOUBLE_EQ(eval("2+3*4^2"), 50.0);
    EXPECT_DOUBLE_EQ(eval("(2+3)*4"), 20.0);
    EXPECT_DOUBLE_EQ(eval("8/4/2"), 1.0);   // division is left associative
    EXPECT_DOUBLE_EQ(eval("7-4-2"), 1.0);
}

TEST(ExpressionTest, PowerIsRightAssociative) {
    EXPECT_DOUBLE_EQ(eval("2^3^2"), 512.0);
    EXPECT_DOUBLE_EQ(eval("4^0.5"), 2.0);
    EXPECT_DOUBLE_EQ(eval("2^(-3)"), 0.125);
}

TEST(ExpressionTest, UnaryMinusBindsLooserThanPower) {
    // -x^2 parses as -(x^2).
    EXPECT_DOUBLE_EQ(eval("-x^2", 3.0, 0.0, 0.0), -9.0);
    EXPECT_DOUBLE_EQ(eval("-2^2"), -4.0);
    EXPECT_DOUBLE_EQ(eval("(-2)^2"), 4.0);
    EXPECT_DOUBLE_EQ(eval("--3"), 3.0);
}

TEST(ExpressionTest, Functions) {
    EXPECT_DOUBLE_EQ(eval("sin(pi/2)"), 1.0);
    EXPECT_DOUBLE_EQ(eval("cos(0)"), 1.0);
    EXPECT_DOUBLE_EQ(eval("exp(0)"), 1.0);
    EXPECT_DOUBLE_EQ(eval("exp(1)"), std::exp(1.0));
    EXPECT_DOUBLE_EQ(eval("abs(-3.5)"), 3.5);
    EXPECT_DOUBLE_EQ(eval("sqrt(9)"), 3.0);
    EXPECT_DOUBLE_EQ(eval("sqrt(abs(-16))"), 4.0);
}

TEST(ExpressionTest, MatchesLibraryEvaluationBitwise) {
    // Parsed programs must agree with hand-written left-associative C++
    // evaluation to the last bit, so configured runs and built-in runs of the
    // same formula coincide exactly.
    Expression e = parse_expression("-pi*sin(pi*x)*sin(pi*y)");
    Expression w = parse_expression("1.0*abs(x)^(-0.5)");
    for (double x : {0.1, 0.37, 0.93, 1.75}) {
        for (double yv : {0.2, 0.68}) {
            EXPECT_EQ(e.eval(x, yv, 0.0), -kPi * std::sin(kPi * x) * std::sin(kPi * yv));
            EXPECT_EQ(w.eval(x, yv, 0.0), 1.0 * std::pow(std::fabs(x), -0.5));
        }
    }
}

TEST(ExpressionTest, WhitespaceIsInsignificant) {
    EXPECT_DOUBLE_EQ(eval("  2 +  3 * x ", 4.0, 0.0, 0.0), 14.0);
    EXPECT_DOUBLE_EQ(eval("sin ( pi / 2 )"), 1.0);
}

TEST(ExpressionTest, DivisionByZeroFollowsIeee) {
    EXPECT_TRUE(std::isinf(eval("1/0")));
    EXPECT_TRUE(std::isnan(eval("0/0")));
}

TEST(ExpressionTest, TracksVariableUsage) {
    EXPECT_FALSE(parse_expression("3*pi").uses_t());
    EXPECT_FALSE(parse_expression("3*pi").uses_xy());
    EXPECT_TRUE(parse_expression("sin(x)").uses_xy());
    EXPECT_TRUE(parse_expression("y+1").uses_xy());
    EXPECT_TRUE(parse_expression("exp(-t)").uses_t());
    EXPECT_FALSE(parse_expression("exp(-t)").uses_xy());
}

TEST(ExpressionTest, ReportsErrorPositions) {
    try {
        parse_expression("2*");
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos) << e.what();
    }
    try {
        parse_expression("1 + @");
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("position 5"), std::string::npos) << what;
        EXPECT_NE(what.find("unexpected character"), std::string::npos) << what;
    }
}

TEST(ExpressionTest, RejectsMalformedInput) {
    EXPECT_THROW(parse_expression(""), std::invalid_argument);
    EXPECT_THROW(parse_expression("   "), std::invalid_argument);
    EXPECT_THROW(parse_expression("(1+2"), std::invalid_argument);
    EXPECT_THROW(parse_expression("1 2"), std::invalid_argument);
    EXPECT_THROW(parse_expression("sin()"), std::invalid_argument);
    EXPECT_THROW(parse_expression("sin(1,2)"), std::invalid_argument);
}

TEST(ExpressionTest, RejectsUnknownNames) {
    try {
        parse_expression("tan(x)");
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("unknown function 'tan'"), std::string::npos);
    }
    try {
        parse_expression("x + z");
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("unknown identifier 'z'"), std::string::npos);
    }
}

TEST(ExpressionTest, TextRoundTrip) {
    Expression e = parse_expression("3*pi + x");
    EXPECT_EQ(e.text(), "3*pi + x");
    EXPECT_FALSE(e.empty());
    EXPECT_TRUE(Expression().empty());
}

TEST(ExpressionTest, DeeplyNestedWithinLimits) {
    // 40 nested parens stay well inside the evaluation stack.
    std::string text = "1";
    for (int i = 0; i < 40; ++i) text = "(" + text + "+0)";
    EXPECT_DOUBLE_EQ(eval(text), 1.0);
}

}  // namespace
}  // namespace wavefem
