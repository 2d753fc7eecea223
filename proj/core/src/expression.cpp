#include "cexpr/expression.hpp"

#include <cmath>

#include "cexpr/errors.hpp"
#include "cexpr/format.hpp"

namespace cexpr {

struct Expression::Node {
    Op op = Op::Constant;
    double value = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

bool is_unary_function(Expression::Op op) {
    switch (op) {
    case Expression::Op::Sin:
    case Expression::Op::Cos:
    case Expression::Op::Exp:
    case Expression::Op::Ln:
    case Expression::Op::Sqrt:
    case Expression::Op::Abs:
    case Expression::Op::Sign:
    case Expression::Op::SignSlope:
        return true;
    default:
        return false;
    }
}

const char* function_name(Expression::Op op) {
    switch (op) {
    case Expression::Op::Sin: return "sin";
    case Expression::Op::Cos: return "cos";
    case Expression::Op::Exp: return "exp";
    case Expression::Op::Ln: return "ln";
    case Expression::Op::Sqrt: return "sqrt";
    case Expression::Op::Abs: return "abs";
    case Expression::Op::Sign: return "sign";
    case Expression::Op::SignSlope: return "signslope";
    default: return "?";
    }
}

double apply_unary(Expression::Op op, double u, double x) {
    switch (op) {
    case Expression::Op::Sin: return std::sin(u);
    case Expression::Op::Cos: return std::cos(u);
    case Expression::Op::Exp: return std::exp(u);
    case Expression::Op::Ln:
        if (!(u > 0.0)) {
            throw DomainError(x, "ln of nonpositive argument");
        }
        return std::log(u);
    case Expression::Op::Sqrt:
        if (u < 0.0) {
            throw DomainError(x, "sqrt of negative argument");
        }
        return std::sqrt(u);
    case Expression::Op::Abs: return std::abs(u);
    case Expression::Op::Sign:
        if (u == 0.0) {
            throw DomainError(x, "abs is not differentiable at 0");
        }
        return u > 0.0 ? 1.0 : -1.0;
    case Expression::Op::SignSlope:
        if (u == 0.0) {
            throw DomainError(x, "abs is not differentiable at 0");
        }
        return 0.0;
    default:
        return 0.0;
    }
}

double apply_power(double base, double exponent, double x) {
    if (base == 0.0 && exponent < 0.0) {
        throw DomainError(x, "division by zero in power");
    }
    if (base < 0.0 && exponent != std::trunc(exponent)) {
        throw DomainError(x, "non-integer power of negative base");
    }
    return std::pow(base, exponent);
}

// Folding a constant through a function is only done when it cannot throw.
bool foldable(Expression::Op op, double u) {
    switch (op) {
    case Expression::Op::Ln: return u > 0.0;
    case Expression::Op::Sqrt: return u >= 0.0;
    case Expression::Op::Sign:
    case Expression::Op::SignSlope: return u != 0.0;
    default: return true;
    }
}

} // namespace

Expression::Expression() : node_(std::make_shared<const Node>()) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::make(Op op, double value, Expression a, Expression b) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->value = value;
    node->a = std::move(a.node_);
    node->b = std::move(b.node_);
    return Expression(std::move(node));
}

Expression Expression::constant(double value) {
    auto node = std::make_shared<Node>();
    node->value = value;
    return Expression(std::move(node));
}

Expression Expression::variable() {
    auto node = std::make_shared<Node>();
    node->op = Op::Variable;
    return Expression(std::move(node));
}

Expression Expression::unary(Op op, Expression arg) {
    if (op == Op::Negate) {
        return -arg;
    }
    if (!is_unary_function(op)) {
        throw InvalidProblem("Expression::unary called with a non-unary operator");
    }
    if (arg.is_constant() && foldable(op, arg.value())) {
        return constant(apply_unary(op, arg.value(), 0.0));
    }
    return make(op, 0.0, std::move(arg), Expression(nullptr));
}

Expression Expression::power(Expression base, double exponent) {
    if (exponent == 0.0) {
        return constant(1.0);
    }
    if (exponent == 1.0) {
        return base;
    }
    if (base.is_constant()) {
        const double b = base.value();
        if (!(b == 0.0 && exponent < 0.0) && !(b < 0.0 && exponent != std::trunc(exponent))) {
            return constant(std::pow(b, exponent));
        }
    }
    return make(Op::Power, exponent, std::move(base), Expression(nullptr));
}

Expression::Op Expression::op() const noexcept { return node_->op; }

double Expression::value() const noexcept { return node_->value; }

std::size_t Expression::arity() const noexcept {
    return node_->a ? (node_->b ? 2 : 1) : 0;
}

Expression Expression::child(std::size_t i) const {
    const auto& ptr = i == 0 ? node_->a : node_->b;
    if (!ptr) {
        throw InvalidProblem("expression node has no child " + std::to_string(i));
    }
    return Expression(ptr);
}

bool Expression::is_variable_free() const {
    if (op() == Op::Variable) {
        return false;
    }
    for (std::size_t i = 0; i < arity(); ++i) {
        if (!child(i).is_variable_free()) {
            return false;
        }
    }
    return true;
}

Expression operator+(const Expression& a, const Expression& b) {
    using Op = Expression::Op;
    if (a.is_constant() && b.is_constant()) {
        return Expression::constant(a.value() + b.value());
    }
    if (a.is_constant(0.0)) {
        return b;
    }
    if (b.is_constant(0.0)) {
        return a;
    }
    return Expression::make(Op::Add, 0.0, a, b);
}

Expression operator-(const Expression& a, const Expression& b) {
    using Op = Expression::Op;
    if (a.is_constant() && b.is_constant()) {
        return Expression::constant(a.value() - b.value());
    }
    if (b.is_constant(0.0)) {
        return a;
    }
    if (a.is_constant(0.0)) {
        return -b;
    }
    return Expression::make(Op::Subtract, 0.0, a, b);
}

Expression operator*(const Expression& a, const Expression& b) {
    using Op = Expression::Op;
    if (a.is_constant() && b.is_constant()) {
        return Expression::constant(a.value() * b.value());
    }
    if (a.is_constant(0.0) || b.is_constant(0.0)) {
        return Expression::constant(0.0);
    }
    if (a.is_constant(1.0)) {
        return b;
    }
    if (b.is_constant(1.0)) {
        return a;
    }
    if (a.is_constant(-1.0)) {
        return -b;
    }
    if (b.is_constant(-1.0)) {
        return -a;
    }
    return Expression::make(Op::Multiply, 0.0, a, b);
}

Expression operator/(const Expression& a, const Expression& b) {
    using Op = Expression::Op;
    if (a.is_constant() && b.is_constant() && b.value() != 0.0) {
        return Expression::constant(a.value() / b.value());
    }
    if (b.is_constant(1.0)) {
        return a;
    }
    if (a.is_constant(0.0)) {
        return Expression::constant(0.0);
    }
    return Expression::make(Op::Divide, 0.0, a, b);
}

Expression operator-(const Expression& a) {
    using Op = Expression::Op;
    if (a.is_constant()) {
        return Expression::constant(-a.value());
    }
    if (a.op() == Op::Negate) {
        return a.child(0);
    }
    return Expression::make(Op::Negate, 0.0, a, Expression(nullptr));
}

double Expression::eval(double x) const {
    switch (op()) {
    case Op::Constant: return value();
    case Op::Variable: return x;
    case Op::Negate: return -child(0).eval(x);
    case Op::Add: return child(0).eval(x) + child(1).eval(x);
    case Op::Subtract: return child(0).eval(x) - child(1).eval(x);
    case Op::Multiply: return child(0).eval(x) * child(1).eval(x);
    case Op::Divide: {
        const double numerator = child(0).eval(x);
        const double denominator = child(1).eval(x);
        if (denominator == 0.0) {
            throw DomainError(x, "division by zero");
        }
        return numerator / denominator;
    }
    case Op::Power: return apply_power(child(0).eval(x), value(), x);
    default: return apply_unary(op(), child(0).eval(x), x);
    }
}

Expression Expression::derivative() const {
    switch (op()) {
    case Op::Constant: return constant(0.0);
    case Op::Variable: return constant(1.0);
    case Op::Negate: return -child(0).derivative();
    case Op::Add: return child(0).derivative() + child(1).derivative();
    case Op::Subtract: return child(0).derivative() - child(1).derivative();
    case Op::Multiply: {
        const Expression u = child(0);
        const Expression v = child(1);
        return u.derivative() * v + u * v.derivative();
    }
    case Op::Divide: {
        const Expression u = child(0);
        const Expression v = child(1);
        if (v.is_variable_free()) {
            return u.derivative() / v;
        }
        return (u.derivative() * v - u * v.derivative()) / power(v, 2.0);
    }
    case Op::Power: {
        const Expression u = child(0);
        return constant(value()) * power(u, value() - 1.0) * u.derivative();
    }
    case Op::Sin: {
        const Expression u = child(0);
        return unary(Op::Cos, u) * u.derivative();
    }
    case Op::Cos: {
        const Expression u = child(0);
        return -(unary(Op::Sin, u) * u.derivative());
    }
    case Op::Exp: return *this * child(0).derivative();
    case Op::Ln: {
        const Expression u = child(0);
        return u.derivative() / u;
    }
    case Op::Sqrt: {
        const Expression u = child(0);
        return u.derivative() / (constant(2.0) * *this);
    }
    case Op::Abs: {
        const Expression u = child(0);
        return unary(Op::Sign, u) * u.derivative();
    }
    case Op::Sign:
    case Op::SignSlope: {
        const Expression u = child(0);
        return unary(Op::SignSlope, u) * u.derivative();
    }
    }
    return constant(0.0);
}

std::string Expression::to_string(std::string_view variable) const {
    switch (op()) {
    case Op::Constant: {
        const std::string text = format_number(value());
        return value() < 0.0 ? "(" + text + ")" : text;
    }
    case Op::Variable: return std::string(variable);
    case Op::Negate: return "(-" + child(0).to_string(variable) + ")";
    case Op::Add:
        return "(" + child(0).to_string(variable) + " + " + child(1).to_string(variable) + ")";
    case Op::Subtract:
        return "(" + child(0).to_string(variable) + " - " + child(1).to_string(variable) + ")";
    case Op::Multiply:
        return "(" + child(0).to_string(variable) + " * " + child(1).to_string(variable) + ")";
    case Op::Divide:
        return "(" + child(0).to_string(variable) + " / " + child(1).to_string(variable) + ")";
    case Op::Power: {
        const std::string exponent = format_number(value());
        return "(" + child(0).to_string(variable) + "^" +
               (value() < 0.0 ? "(" + exponent + ")" : exponent) + ")";
    }
    default:
        return std::string(function_name(op())) + "(" + child(0).to_string(variable) + ")";
    }
}

std::size_t Expression::node_count() const {
    std::size_t count = 1;
    for (std::size_t i = 0; i < arity(); ++i) {
        count += child(i).node_count();
    }
    return count;
}

SymbolicFunction::SymbolicFunction(Expression expression)
    : expression_(expression), cache_(std::make_shared<Cache>()) {
    cache_->orders.push_back(std::move(expression));
}

Expression SymbolicFunction::derivative(unsigned order) const {
    std::lock_guard lock(cache_->mutex);
    auto& orders = cache_->orders;
    while (orders.size() <= order) {
        orders.push_back(orders.back().derivative());
    }
    return orders[order];
}

double SymbolicFunction::eval(double x, unsigned order) const {
    return derivative(order).eval(x);
}

} // namespace cexpr
