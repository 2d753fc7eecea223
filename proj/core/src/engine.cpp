#include "cexpr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cexpr/errors.hpp"
#include "cexpr/format.hpp"

namespace cexpr {

namespace {

std::string remedy_hint(const ConstraintSet* set, const BasisFamily* basis) {
    std::string hint =
        "choose support functions whose derivatives of the constrained orders are independent";
    if (set != nullptr && basis != nullptr && basis->all_monomials()) {
        const BasisFamily remedy = suggest_monomial_remedy(*set);
        std::string members;
        for (const auto& m : remedy.members()) {
            members += (members.empty() ? "" : ", ") + m.label();
        }
        hint = "raise monomial degrees, e.g. basis {" + members +
               "}, or switch to smooth non-polynomial members (exp, sin, cos, ln)";
    } else if (set != nullptr && basis != nullptr) {
        hint += "; smooth non-polynomial members (exp, sin, cos, ln) avoid vanishing derivatives";
    }
    return hint;
}

} // namespace

SupportMatrix assemble_support_matrix(const ConstraintSet& set, const BasisFamily& basis) {
    const std::size_t n = set.size();
    if (n == 0) {
        throw InvalidProblem("constraint set is empty");
    }
    if (n != basis.size()) {
        throw InvalidProblem("square problem required: " + std::to_string(n) + " constraints but " +
                             std::to_string(basis.size()) + " basis members");
    }
    SupportMatrix support;
    support.entries = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        auto row = support.entries.row(k);
        for (const auto& term : set[k].terms()) {
            for (std::size_t i = 0; i < n; ++i) {
                double h = 0.0;
                try {
                    h = basis.member(i).eval(term.location, term.order);
                } catch (const DomainError&) {
                    throw BasisUndefinedAtConstraint(i, term.location, term.order);
                }
                row[i] += term.weight * h;
            }
        }
    }
    const InversionResult inversion = invert(support.entries, kPivotThreshold);
    support.rank = inversion.rank;
    support.rcond = inversion.rcond;
    return support;
}

CoefficientMatrix solve_coefficients(const SupportMatrix& support) {
    return solve_coefficients(support, ConstraintSet{}, BasisFamily::monomials(1));
}

CoefficientMatrix solve_coefficients(const SupportMatrix& support, const ConstraintSet& set,
                                     const BasisFamily& basis) {
    const bool have_problem = set.size() == support.size() && basis.size() == support.size();
    InversionResult inversion = invert(support.entries, kPivotThreshold);
    if (!inversion.inverse || inversion.rcond < kRcondError) {
        throw SingularSupport(inversion.rank, support.size(), inversion.rcond,
                              remedy_hint(have_problem ? &set : nullptr, have_problem ? &basis : nullptr));
    }
    return CoefficientMatrix{std::move(*inversion.inverse)};
}

BasisFamily suggest_monomial_remedy(const ConstraintSet& set) {
    std::vector<unsigned> orders;
    orders.reserve(set.size());
    for (const auto& c : set) {
        orders.push_back(c.min_order());
    }
    std::sort(orders.begin(), orders.end());
    std::vector<BasisMember> members;
    unsigned next = 0;
    for (unsigned d : orders) {
        const unsigned power = std::max(d, next);
        members.push_back(BasisMember::monomial(power));
        next = power + 1;
    }
    if (members.empty()) {
        members.push_back(BasisMember::monomial(0));
    }
    return BasisFamily(std::move(members));
}

ConstrainedExpression::ConstrainedExpression(BasisFamily basis, CoefficientMatrix coefficients,
                                             ConstraintSet constraints, FreeFunction free)
    : basis_(std::move(basis)),
      coefficients_(std::move(coefficients)),
      constraints_(std::move(constraints)),
      free_(std::move(free)) {
    const std::size_t n = constraints_.size();
    if (coefficients_.columns.rows() != basis_.size() || coefficients_.columns.cols() != n) {
        throw DimensionMismatch("coefficient matrix must be " + std::to_string(basis_.size()) + "x" +
                                std::to_string(n));
    }
    shifts_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double g_part = apply_functional(constraints_[k], [&](double x, unsigned order) {
            try {
                return free_.eval(x, order);
            } catch (const DomainError& e) {
                throw FreeFunctionUndefined(x, order, e.what());
            } catch (const OrderExceeded& e) {
                throw FreeFunctionUndefined(x, order, e.what());
            }
        });
        shifts_[k] = constraints_[k].value() - g_part;
    }
}

std::vector<double> ConstrainedExpression::beta(double x, unsigned order) const {
    return row_times(basis_.eval_row(x, order), coefficients_.columns);
}

double ConstrainedExpression::evaluate(double x, unsigned order) const {
    const std::vector<double> b = beta(x, order);
    double value = free_.eval(x, order);
    for (std::size_t k = 0; k < b.size(); ++k) {
        value += b[k] * shifts_[k];
    }
    return value;
}

std::vector<double> ConstrainedExpression::residuals() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) {
        const double achieved =
            apply_functional(constraints_[k], [&](double x, unsigned order) { return evaluate(x, order); });
        out[k] = std::abs(achieved - constraints_[k].value());
    }
    return out;
}

std::vector<double> ConstrainedExpression::residual_scales() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out[k] = std::max({1.0, std::abs(constraints_[k].value()), std::abs(shifts_[k])});
    }
    return out;
}

Matrix ConstrainedExpression::kronecker() const {
    const std::size_t n = size();
    Matrix k_matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& term : constraints_[k].terms()) {
            const std::vector<double> b = beta(term.location, term.order);
            for (std::size_t i = 0; i < n; ++i) {
                k_matrix(k, i) += term.weight * b[i];
            }
        }
    }
    return k_matrix;
}

ConstrainedExpression ConstrainedExpression::with_coefficients(CoefficientMatrix coefficients) const {
    return ConstrainedExpression(basis_, std::move(coefficients), constraints_, free_);
}

ConstrainedExpression build(const ConstraintSet& set, const BasisFamily& basis, const FreeFunction& g) {
    const SupportMatrix support = assemble_support_matrix(set, basis);
    CoefficientMatrix xi = solve_coefficients(support, set, basis);
    return ConstrainedExpression(basis, std::move(xi), set, g);
}

} // namespace cexpr
