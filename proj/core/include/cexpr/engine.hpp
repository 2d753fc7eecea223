#pragma once

#include <string>
#include <vector>

#include "cexpr/basis.hpp"
#include "cexpr/constraints.hpp"
#include "cexpr/free_function.hpp"
#include "cexpr/linalg.hpp"

namespace cexpr {

/// Pivots at or below this fraction of max|H| count as zero.
inline constexpr double kPivotThreshold = 1e-12;
/// rcond below this is a hard SingularSupport error.
inline constexpr double kRcondError = 1e-12;
/// rcond below this is reported as ill conditioned.
inline constexpr double kRcondWarning = 1e-10;

/// H with row k = sum_j alpha_kj * h^(d_kj)(x_kj).
struct SupportMatrix {
    Matrix entries;
    std::size_t rank = 0;
    double rcond = 0.0;

    std::size_t size() const noexcept { return entries.rows(); }
    bool singular() const noexcept { return rank < size() || rcond < kRcondError; }
    bool ill_conditioned() const noexcept { return rcond < kRcondWarning; }
};

/// Xi = H^-1; column k holds xi_k, the basis coefficients of beta_k.
struct CoefficientMatrix {
    Matrix columns;

    std::size_t size() const noexcept { return columns.rows(); }
    std::vector<double> xi(std::size_t k) const { return columns.column(k); }
};

/// Builds H for a square problem (constraint count == basis size).
/// Throws InvalidProblem on size mismatch and BasisUndefinedAtConstraint when
/// a member cannot be evaluated at a constraint location.
SupportMatrix assemble_support_matrix(const ConstraintSet& set, const BasisFamily& basis);

/// Inverts H. Throws SingularSupport when rank < n or rcond < kRcondError.
CoefficientMatrix solve_coefficients(const SupportMatrix& support);

/// Same as solve_coefficients, with a remedy hint tailored to the problem.
CoefficientMatrix solve_coefficients(const SupportMatrix& support, const ConstraintSet& set,
                                     const BasisFamily& basis);

/// Monomial family with one power per constraint, assigned in order of the
/// constraints' smallest derivative orders so each power survives its
/// constraint's differentiation. Gives {1, x^3, x^4, x^5} for
/// {y'''(x1), y(x2), y'''(x2), y'''(x3)}.
BasisFamily suggest_monomial_remedy(const ConstraintSet& set);

/// y(x) = g(x) + sum_k beta_k(x) (c_k - alpha_k^T g^(d_k)(x_k)),
/// with beta(x) = h(x)^T Xi. Immutable; all queries are pure.
class ConstrainedExpression {
public:
    ConstrainedExpression(BasisFamily basis, CoefficientMatrix coefficients, ConstraintSet constraints,
                          FreeFunction free);

    const BasisFamily& basis() const noexcept { return basis_; }
    const CoefficientMatrix& coefficients() const noexcept { return coefficients_; }
    const ConstraintSet& constraints() const noexcept { return constraints_; }
    const FreeFunction& free_function() const noexcept { return free_; }
    /// c_k - alpha_k^T g^(d_k)(x_k), cached at construction.
    const std::vector<double>& shifts() const noexcept { return shifts_; }

    std::size_t size() const noexcept { return shifts_.size(); }

    /// d^order beta_k / dx^order at x for every k.
    std::vector<double> beta(double x, unsigned order = 0) const;

    /// d^order y / dx^order at x.
    double evaluate(double x, unsigned order = 0) const;

    /// |sum_j alpha_kj y^(d_kj)(x_kj) - c_k| for every constraint.
    std::vector<double> residuals() const;
    /// max(1, |c_k|, |shift_k|), the scale residuals are judged against.
    std::vector<double> residual_scales() const;

    /// K(k, i) = constraint functional k applied to beta_i. Equals the
    /// identity for a correct solve.
    Matrix kronecker() const;

    /// Copy with Xi replaced; used to exercise verification failure paths.
    ConstrainedExpression with_coefficients(CoefficientMatrix coefficients) const;

private:
    BasisFamily basis_;
    CoefficientMatrix coefficients_;
    ConstraintSet constraints_;
    FreeFunction free_;
    std::vector<double> shifts_;
};

/// Assembles H, inverts it and caches the g shifts.
/// Throws SingularSupport, FreeFunctionUndefined, InvalidProblem and
/// BasisUndefinedAtConstraint.
ConstrainedExpression build(const ConstraintSet& set, const BasisFamily& basis, const FreeFunction& g);

/// sum_j alpha_j f^(d_j)(x_j) for any callable f(x, order).
template <typename F>
double apply_functional(const LinearConstraint& constraint, F&& f) {
    double sum = 0.0;
    for (const auto& term : constraint.terms()) {
        sum += term.weight * f(term.location, term.order);
    }
    return sum;
}

} // namespace cexpr
