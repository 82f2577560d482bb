#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "nodalsl/errors.hpp"

namespace nodalsl::expr {

/// Syntax error with the byte offset into the source and a hint naming what
/// was expected at that position.
struct ParseError : Error {
    ParseError(std::size_t offset_, const std::string& expected_, const std::string& msg)
        : Error(msg), offset(offset_), expected(expected_) {}
    std::size_t offset;
    std::string expected;
};

/// Evaluation failure (division by zero, non-finite intermediate).
struct EvalError : Error {
    using Error::Error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryFn { Sin, Cos, Exp, Abs };

/// One node of the parsed expression tree.  Nodes are immutable after
/// construction and shared by const pointer, so trees are safe to copy and
/// to evaluate concurrently.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Number, Pi, Var, Neg, Fn, Binary };
    Kind kind;
    double number = 0.0;  // Kind::Number
    UnaryFn fn{};         // Kind::Fn
    BinaryOp op{};        // Kind::Binary
    NodePtr lhs, rhs;     // Neg/Fn use lhs only
};

/// Immutable expression in one variable `x`, with functions sin/cos/exp/abs,
/// operators + - * / ^ and the named constant pi.
class Ast {
public:
    Ast() = default;
    explicit Ast(NodePtr root) : root_(std::move(root)) {}

    /// Parse an expression; throws ParseError on malformed input and on
    /// unknown identifiers.
    static Ast parse(std::string_view source);

    /// Evaluate at x.  Deterministic: identical inputs give bit-identical
    /// results.  Throws EvalError on division by zero or a non-finite
    /// intermediate value.
    [[nodiscard]] double eval(double x) const;

    /// Render back to text.  Reparsing the result yields a tree whose
    /// evaluation is bit-identical at every x.
    [[nodiscard]] std::string str() const;

    [[nodiscard]] const NodePtr& root() const { return root_; }
    [[nodiscard]] bool empty() const { return root_ == nullptr; }

private:
    NodePtr root_;
};

}  // namespace nodalsl::expr
