#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cexpr/expression.hpp"

namespace cexpr {

/// One support function h(x) with closed-form derivatives of any order.
class BasisMember {
public:
    enum class Kind {
        Monomial,        // x^k
        ScaledMonomial,  // x^k / k!
        Exp,
        Sin,
        Cos,
        Ln,
        Reciprocal,      // x^(-k)
        Composite,       // parsed expression
    };

    static BasisMember monomial(unsigned k);
    static BasisMember scaled_monomial(unsigned k);
    static BasisMember exp();
    static BasisMember sin();
    static BasisMember cos();
    static BasisMember ln();
    static BasisMember reciprocal(unsigned k);
    static BasisMember composite(std::string text, const ConstantMap& constants = {});

    /// Reads "monomial:k", "scaled-monomial:k", "exp", "sin", "cos", "ln",
    /// "recip:k" or "expr:<text>".
    static BasisMember from_descriptor(std::string_view descriptor,
                                       const ConstantMap& constants = {});

    Kind kind() const noexcept { return kind_; }
    unsigned power() const noexcept { return power_; }

    /// d^order h / dx^order at x. Throws DomainError when undefined.
    double eval(double x, unsigned order = 0) const;

    bool is_defined(double x, unsigned order = 0) const;

    /// Human readable description of where the member is undefined ("" when
    /// defined everywhere; composites report "where the expression is").
    std::string undefined_set() const;

    std::string descriptor() const;
    /// Math-style label, e.g. "x^3", "exp(x)".
    std::string label() const;

private:
    BasisMember(Kind kind, unsigned power) : kind_(kind), power_(power) {}

    Kind kind_;
    unsigned power_ = 0;
    std::string text_;
    std::optional<SymbolicFunction> expression_;
};

/// Ordered family of support functions. Member order fixes column order in
/// every matrix built from the family. Immutable after construction.
class BasisFamily {
public:
    explicit BasisFamily(std::vector<BasisMember> members);

    /// {1, x, ..., x^(count-1)}.
    static BasisFamily monomials(std::size_t count);
    static BasisFamily from_descriptors(const std::vector<std::string>& descriptors,
                                        const ConstantMap& constants = {});

    std::size_t size() const noexcept { return members_.size(); }
    const BasisMember& member(std::size_t index) const { return members_.at(index); }
    const std::vector<BasisMember>& members() const noexcept { return members_; }

    /// d^order h_index / dx^order at x; `index` is 0-based.
    /// Throws UndefinedAt carrying the member index.
    double eval_member(std::size_t index, double x, unsigned order = 0) const;

    /// Row vector of eval_member over all members.
    std::vector<double> eval_row(double x, unsigned order = 0) const;

    bool all_monomials() const;

private:
    std::vector<BasisMember> members_;
};

} // namespace cexpr
