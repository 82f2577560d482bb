#include "nodalsl/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

namespace nodalsl::expr {

namespace {

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
}

NodePtr make_leaf(Node::Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

NodePtr make_neg(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Neg;
    n->lhs = std::move(child);
    return n;
}

NodePtr make_fn(UnaryFn f, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Fn;
    n->fn = f;
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

// --- recursive-descent parser -------------------------------------------
//
// additive       := multiplicative (('+'|'-') multiplicative)*
// multiplicative := unary (('*'|'/') unary)*
// unary          := '-' unary | power
// power          := primary ('^' unary)?            (right-associative)
// primary        := NUMBER | 'pi' | 'x' | FN '(' additive ')' | '(' additive ')'

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        skip_ws();
        if (pos_ >= src_.size())
            fail(pos_, "expression", "empty expression");
        NodePtr e = additive();
        skip_ws();
        if (pos_ < src_.size())
            fail(pos_, "end of input", std::string("unexpected '") + src_[pos_] + "'");
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& expected,
                           const std::string& what) const {
        throw ParseError(at, expected,
                         "syntax error at offset " + std::to_string(at) + ": " + what +
                             " (expected " + expected + ")");
    }

    void skip_ws() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr additive() {
        NodePtr lhs = multiplicative();
        for (;;) {
            if (accept('+')) lhs = make_binary(BinaryOp::Add, lhs, multiplicative());
            else if (accept('-')) lhs = make_binary(BinaryOp::Sub, lhs, multiplicative());
            else return lhs;
        }
    }

    NodePtr multiplicative() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make_binary(BinaryOp::Mul, lhs, unary());
            else if (accept('/')) lhs = make_binary(BinaryOp::Div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_neg(unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make_binary(BinaryOp::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail(pos_, "expression", "unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = additive();
            if (!accept(')')) fail(pos_, "')'", "unbalanced parenthesis");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(pos_, "number, identifier or '('", std::string("unexpected '") + c + "'");
    }

    NodePtr number() {
        const char* begin = src_.data() + pos_;
        const char* end = src_.data() + src_.size();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin)
            fail(pos_, "number", "malformed numeric literal");
        pos_ = static_cast<std::size_t>(ptr - src_.data());
        return make_number(value);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return make_leaf(Node::Kind::Var);
        if (name == "pi") return make_leaf(Node::Kind::Pi);
        UnaryFn fn;
        if (name == "sin") fn = UnaryFn::Sin;
        else if (name == "cos") fn = UnaryFn::Cos;
        else if (name == "exp") fn = UnaryFn::Exp;
        else if (name == "abs") fn = UnaryFn::Abs;
        else fail(start, "x, pi, sin, cos, exp or abs",
                  "unknown identifier '" + std::string(name) + "'");
        if (!accept('(')) fail(pos_, "'('", "function application requires parentheses");
        NodePtr arg = additive();
        if (!accept(')')) fail(pos_, "')'", "unbalanced parenthesis");
        return make_fn(fn, arg);
    }
};

// --- evaluation -----------------------------------------------------------

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Pi: return std::numbers::pi;
        case Node::Kind::Var: return x;
        case Node::Kind::Neg: return -eval_node(*n.lhs, x);
        case Node::Kind::Fn: {
            const double a = eval_node(*n.lhs, x);
            switch (n.fn) {
                case UnaryFn::Sin: return std::sin(a);
                case UnaryFn::Cos: return std::cos(a);
                case UnaryFn::Exp: {
                    const double r = std::exp(a);
                    if (!std::isfinite(r)) throw EvalError("exp overflow");
                    return r;
                }
                case UnaryFn::Abs: return std::fabs(a);
            }
            break;
        }
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, x);
            const double b = eval_node(*n.rhs, x);
            switch (n.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b == 0.0) throw EvalError("division by zero");
                    return a / b;
                case BinaryOp::Pow: {
                    const double r = std::pow(a, b);
                    if (!std::isfinite(r)) throw EvalError("non-finite result of '^'");
                    return r;
                }
            }
            break;
        }
    }
    throw EvalError("malformed expression tree");
}

// --- printing ---------------------------------------------------------------
//
// Precedence levels used to decide where parentheses are required so that the
// printed text reparses into a tree with identical evaluation order:
//   additive 1 < multiplicative 2 < unary minus 3 < power 4 < atom 5.
// Negative literals print with a leading '-', so they carry the precedence of
// unary minus when used as a child.

int precedence(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
            return 1;
        case Node::Kind::Neg: return 3;
        case Node::Kind::Number: return n.number < 0 ? 3 : 5;
        default: return 5;
    }
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Node::Kind::Number: out += format_double(n.number); return;
        case Node::Kind::Pi: out += "pi"; return;
        case Node::Kind::Var: out += "x"; return;
        case Node::Kind::Neg:
            out += '-';
            print_child(*n.lhs, 3, out);
            return;
        case Node::Kind::Fn:
            switch (n.fn) {
                case UnaryFn::Sin: out += "sin("; break;
                case UnaryFn::Cos: out += "cos("; break;
                case UnaryFn::Exp: out += "exp("; break;
                case UnaryFn::Abs: out += "abs("; break;
            }
            print_node(*n.lhs, out);
            out += ')';
            return;
        case Node::Kind::Binary: {
            const int p = precedence(n);
            const char* op = nullptr;
            switch (n.op) {
                case BinaryOp::Add: op = "+"; break;
                case BinaryOp::Sub: op = "-"; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; break;
            }
            if (n.op == BinaryOp::Pow) {
                // right-associative: parenthesize a left child at the same level
                print_child(*n.lhs, p + 1, out);
                out += op;
                print_child(*n.rhs, p, out);
            } else {
                // left-associative: parenthesize a right child at the same level
                print_child(*n.lhs, p, out);
                out += op;
                print_child(*n.rhs, p + 1, out);
            }
            return;
        }
    }
}

}  // namespace

Ast Ast::parse(std::string_view source) {
    Parser p(source);
    return Ast(p.run());
}

double Ast::eval(double x) const {
    if (!root_) throw EvalError("empty expression");
    return eval_node(*root_, x);
}

std::string Ast::str() const {
    if (!root_) return {};
    std::string out;
    print_node(*root_, out);
    return out;
}

}  // namespace nodalsl::expr
