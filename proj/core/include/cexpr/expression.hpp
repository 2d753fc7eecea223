#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace cexpr {

using ConstantMap = std::map<std::string, double, std::less<>>;

/// Immutable expression tree in one real variable.
///
/// Nodes are shared between trees, so copying an Expression is cheap.
/// Differentiation is symbolic and applies a light set of algebraic
/// simplifications (constant folding, additive/multiplicative identities);
/// it is not a computer-algebra system.
class Expression {
public:
    enum class Op {
        Constant,
        Variable,
        Negate,
        Add,
        Subtract,
        Multiply,
        Divide,
        Power,  // child ^ value, value is a constant exponent
        Sin,
        Cos,
        Exp,
        Ln,
        Sqrt,
        Abs,
        Sign,       // derivative of abs; undefined at 0
        SignSlope,  // derivative of Sign: 0 everywhere except undefined at 0
    };

    /// The zero constant.
    Expression();

    static Expression constant(double value);
    static Expression variable();
    static Expression unary(Op op, Expression arg);
    static Expression power(Expression base, double exponent);

    Op op() const noexcept;
    /// Constant value or Power exponent.
    double value() const noexcept;
    /// Number of children (0, 1 or 2).
    std::size_t arity() const noexcept;
    Expression child(std::size_t i) const;

    bool is_constant() const noexcept { return op() == Op::Constant; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }
    /// True when the tree does not reference the variable.
    bool is_variable_free() const;

    /// Evaluates at x. Throws DomainError where the tree is undefined.
    double eval(double x) const;

    /// First derivative with respect to the variable.
    Expression derivative() const;

    /// Text that `parse` reads back to an equivalent tree.
    std::string to_string(std::string_view variable = "x") const;

    /// Number of nodes, counting shared subtrees once per reference.
    std::size_t node_count() const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node);
    static Expression make(Op op, double value, Expression a, Expression b);

    std::shared_ptr<const Node> node_;
};

struct ParseOptions {
    ConstantMap constants;
    std::string variable = "x";
};

/// Parses conventional infix text: numbers, the variable, pi, e, bound
/// constants, sin cos exp ln sqrt abs, + - * / ^ and parentheses.
/// Precedence: ^ above unary minus above * / above + -; binary operators of
/// equal precedence associate to the left. Exponents must be constant.
Expression parse(std::string_view text, const ParseOptions& options = {});
Expression parse(std::string_view text, const ConstantMap& constants);

/// Evaluates variable-free text such as "2*pi" or "v + 1".
double parse_constant(std::string_view text, const ConstantMap& constants = {});

/// An expression paired with its memoized derivative trees.
///
/// Derivative trees are created on first request under a mutex and are
/// immutable afterwards. Copies share the cache.
class SymbolicFunction {
public:
    explicit SymbolicFunction(Expression expression);

    const Expression& expression() const noexcept { return expression_; }
    Expression derivative(unsigned order) const;
    double eval(double x, unsigned order = 0) const;

private:
    struct Cache {
        std::mutex mutex;
        std::vector<Expression> orders;
    };
    Expression expression_;
    std::shared_ptr<Cache> cache_;
};

} // namespace cexpr
