#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cexpr/basis.hpp"
#include "cexpr/expression.hpp"

namespace cexpr {

/// The free function g(x) of a constrained expression.
///
/// One of: the zero function, a parsed expression (exact symbolic
/// derivatives of any order), or a linear combination sum_i c_i h_i(x) of
/// basis members. Every kind carries a declared maximum derivative order.
class FreeFunction {
public:
    enum class Kind { Zero, Expression, LinearCombination };

    static constexpr unsigned unbounded = std::numeric_limits<unsigned>::max();

    /// The zero function.
    FreeFunction();

    static FreeFunction zero();
    static FreeFunction expression(Expression e, unsigned max_order = unbounded);
    static FreeFunction parse(std::string_view text, const ConstantMap& constants = {});
    static FreeFunction linear_combination(BasisFamily basis, std::vector<double> coefficients,
                                           unsigned max_order = unbounded);

    Kind kind() const noexcept { return kind_; }
    unsigned max_order() const noexcept { return max_order_; }

    /// d^order g / dx^order at x.
    /// Throws DomainError (undefined or non-finite) or OrderExceeded.
    double eval(double x, unsigned order = 0) const;
    double operator()(double x) const { return eval(x); }

    std::string describe() const;

private:
    Kind kind_ = Kind::Zero;
    unsigned max_order_ = unbounded;
    std::optional<SymbolicFunction> symbolic_;
    std::optional<BasisFamily> basis_;
    std::vector<double> coefficients_;
};

} // namespace cexpr
