#include "cexpr/free_function.hpp"

#include <cmath>

#include "cexpr/errors.hpp"
#include "cexpr/format.hpp"

namespace cexpr {

FreeFunction::FreeFunction() = default;

FreeFunction FreeFunction::zero() { return FreeFunction(); }

FreeFunction FreeFunction::expression(Expression e, unsigned max_order) {
    FreeFunction f;
    f.kind_ = Kind::Expression;
    f.max_order_ = max_order;
    f.symbolic_.emplace(std::move(e));
    return f;
}

FreeFunction FreeFunction::parse(std::string_view text, const ConstantMap& constants) {
    return expression(cexpr::parse(text, constants));
}

FreeFunction FreeFunction::linear_combination(BasisFamily basis, std::vector<double> coefficients,
                                              unsigned max_order) {
    if (coefficients.size() != basis.size()) {
        throw DimensionMismatch("linear combination needs " + std::to_string(basis.size()) +
                                " coefficients, got " + std::to_string(coefficients.size()));
    }
    FreeFunction f;
    f.kind_ = Kind::LinearCombination;
    f.max_order_ = max_order;
    f.basis_.emplace(std::move(basis));
    f.coefficients_ = std::move(coefficients);
    return f;
}

double FreeFunction::eval(double x, unsigned order) const {
    if (order > max_order_) {
        throw OrderExceeded(order, max_order_);
    }
    double value = 0.0;
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Expression:
        value = symbolic_->eval(x, order);
        break;
    case Kind::LinearCombination:
        for (std::size_t i = 0; i < coefficients_.size(); ++i) {
            if (coefficients_[i] != 0.0) {
                value += coefficients_[i] * basis_->member(i).eval(x, order);
            }
        }
        break;
    }
    if (!std::isfinite(value)) {
        throw DomainError(x, "non-finite value of free function");
    }
    return value;
}

std::string FreeFunction::describe() const {
    switch (kind_) {
    case Kind::Zero:
        return "0";
    case Kind::Expression:
        return symbolic_->expression().to_string();
    case Kind::LinearCombination: {
        std::string text;
        for (std::size_t i = 0; i < coefficients_.size(); ++i) {
            if (!text.empty()) {
                text += " + ";
            }
            text += format_number(coefficients_[i]) + "*" + basis_->member(i).label();
        }
        return text;
    }
    }
    return "";
}

} // namespace cexpr
