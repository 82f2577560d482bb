#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "nodalsl/expr.hpp"

using namespace nodalsl::expr;
namespace {
constexpr double pi = std::numbers::pi;

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// Random tree generator for the round-trip property.
NodePtr random_tree(std::mt19937& rng, int depth) {
    auto node = [&](auto&& fill) {
        auto n = std::make_shared<Node>();
        fill(*n);
        return NodePtr(n);
    };
    std::uniform_int_distribution<int> leaf_pick(0, 2);
    std::uniform_real_distribution<double> num(-4.0, 4.0);
    if (depth <= 0 || std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
        switch (leaf_pick(rng)) {
            case 0: return node([&](Node& n) { n.kind = Node::Kind::Number; n.number = num(rng); });
            case 1: return node([](Node& n) { n.kind = Node::Kind::Var; });
            default: return node([](Node& n) { n.kind = Node::Kind::Pi; });
        }
    }
    switch (std::uniform_int_distribution<int>(0, 6)(rng)) {
        case 0:
            return node([&](Node& n) {
                n.kind = Node::Kind::Neg;
                n.lhs = random_tree(rng, depth - 1);
            });
        case 1:
            return node([&](Node& n) {
                n.kind = Node::Kind::Fn;
                n.fn = static_cast<UnaryFn>(std::uniform_int_distribution<int>(0, 3)(rng));
                n.lhs = random_tree(rng, depth - 1);
            });
        case 2:
        case 3:
        case 4: {
            return node([&](Node& n) {
                n.kind = Node::Kind::Binary;
                n.op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 3)(rng));
                n.lhs = random_tree(rng, depth - 1);
                n.rhs = random_tree(rng, depth - 1);
            });
        }
        default: {
            // ^ with a small integer exponent keeps most evaluations finite
            return node([&](Node& n) {
                n.kind = Node::Kind::Binary;
                n.op = BinaryOp::Pow;
                n.lhs = random_tree(rng, depth - 1);
                auto e = std::make_shared<Node>();
                e->kind = Node::Kind::Number;
                e->number = std::uniform_int_distribution<int>(0, 3)(rng);
                n.rhs = e;
            });
        }
    }
}

}  // namespace

TEST_CASE("parse and evaluate the worked potentials") {
    CHECK(Ast::parse("cos(pi*x)").eval(0.0) == 1.0);
    CHECK(Ast::parse("sin(pi*x) - 2/pi").eval(0.5) ==
          doctest::Approx(std::sin(pi * 0.5) - 2.0 / pi).epsilon(1e-15));
    CHECK(Ast::parse("x^2").eval(0.5) == 0.25);
    CHECK(Ast::parse("cos(pi*x)").eval(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(Ast::parse("cos(pi*x)+x-0.5").eval(0.0) == 0.5);
    CHECK(Ast::parse("abs(-x)").eval(0.25) == 0.25);
    CHECK(Ast::parse("exp(0)").eval(0.9) == 1.0);
}

TEST_CASE("syntax errors carry the byte offset and a hint") {
    CHECK_THROWS_AS(Ast::parse("cos("), ParseError);
    try {
        Ast::parse("cos(");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
        CHECK(!e.expected.empty());
    }
    try {
        Ast::parse("1 + * 2");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    CHECK_THROWS_AS(Ast::parse(""), ParseError);
    CHECK_THROWS_AS(Ast::parse("  "), ParseError);
    CHECK_THROWS_AS(Ast::parse("1+"), ParseError);
    CHECK_THROWS_AS(Ast::parse("(1+2"), ParseError);
    CHECK_THROWS_AS(Ast::parse("sin 2"), ParseError);  // needs parentheses
}

TEST_CASE("unknown identifiers are rejected with their position") {
    try {
        Ast::parse("2*foo(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(Ast::parse("y"), ParseError);
}

TEST_CASE("division by zero is an evaluation error, not a silent inf") {
    const Ast ast = Ast::parse("1/(x-x)");
    CHECK_THROWS_AS((void)ast.eval(0.3), EvalError);
    CHECK_THROWS_AS((void)Ast::parse("exp(1/x)").eval(0.0), EvalError);
}

TEST_CASE("precedence and associativity") {
    // ^ binds tighter than unary minus; right-associative
    CHECK(Ast::parse("-2^2").eval(0.0) == -4.0);
    CHECK(Ast::parse("2^3^2").eval(0.0) == 512.0);
    CHECK(Ast::parse("2*-3").eval(0.0) == -6.0);
    CHECK(Ast::parse("1-2-3").eval(0.0) == -4.0);
    CHECK(Ast::parse("12/4/3").eval(0.0) == 1.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> num(-10.0, 10.0);
    for (int i = 0; i < 64; ++i) {
        const double a = num(rng), b = num(rng), c = num(rng);
        const std::string src = std::to_string(a) + "+" + std::to_string(b) + "*" +
                                std::to_string(c);
        const double aa = std::stod(std::to_string(a));
        const double bb = std::stod(std::to_string(b));
        const double cc = std::stod(std::to_string(c));
        CHECK(same_bits(Ast::parse(src).eval(0.0), aa + bb * cc));
    }
}

TEST_CASE("print/parse round trip evaluates bit-identically") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    int evaluated = 0;
    for (int t = 0; t < 200; ++t) {
        const Ast original(random_tree(rng, 4));
        const std::string text = original.str();
        Ast reparsed = Ast::parse(text);    // must always reparse
        const std::string text2 = reparsed.str();
        CHECK(text2 == Ast::parse(text2).str());  // printing is stable

        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            double v1 = 0.0, v2 = 0.0;
            bool t1 = false, t2 = false;
            try { v1 = original.eval(x); } catch (const EvalError&) { t1 = true; }
            try { v2 = reparsed.eval(x); } catch (const EvalError&) { t2 = true; }
            REQUIRE(t1 == t2);
            if (!t1) {
                REQUIRE(same_bits(v1, v2));
                ++evaluated;
            }
        }
    }
    CHECK(evaluated > 10000);  // the corpus is mostly evaluable
}

TEST_CASE("negative literals keep their binding when printed") {
    // a tree (-3)^x must not print as -3^x
    auto neg3 = std::make_shared<Node>();
    neg3->kind = Node::Kind::Number;
    neg3->number = -3.0;
    auto var = std::make_shared<Node>();
    var->kind = Node::Kind::Var;
    auto pow = std::make_shared<Node>();
    pow->kind = Node::Kind::Binary;
    pow->op = BinaryOp::Pow;
    pow->lhs = neg3;
    pow->rhs = var;
    const Ast ast{NodePtr(pow)};
    const Ast back = Ast::parse(ast.str());
    CHECK(same_bits(ast.eval(1.0), back.eval(1.0)));
    CHECK(ast.eval(1.0) == -3.0);
}
