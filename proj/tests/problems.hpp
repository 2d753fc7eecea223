#pragma once

#include <numbers>
#include <string>

#include "cexpr/engine.hpp"
#include "support.hpp"

namespace cexpr::testing {

struct RandomProblem {
    ConstraintSet constraints;
    BasisFamily basis;
    FreeFunction g;
    double v = 0.0;
};

inline BasisMember random_member(Draws& draws, std::size_t index) {
    switch (draws.integer(0, 3)) {
    case 0: return BasisMember::exp();
    case 1: return BasisMember::sin();
    case 2: return BasisMember::cos();
    default: return BasisMember::monomial(static_cast<unsigned>(index));
    }
}

inline LinearConstraint random_constraint(Draws& draws) {
    const auto location = [&] { return draws.uniform(-1.5, 1.5); };
    const auto order = [&] { return static_cast<unsigned>(draws.integer(0, 2)); };
    switch (draws.integer(0, 3)) {
    case 0: return point_constraint(location(), draws.uniform(-2.0, 2.0));
    case 1: return derivative_constraint(location(), order(), draws.uniform(-2.0, 2.0));
    case 2: {
        const double a = location();
        double b = location();
        while (std::abs(a - b) < 0.2) {
            b = location();
        }
        return relative_constraint(a, order(), b, order());
    }
    default: {
        std::vector<ConstraintTerm> terms;
        const int count = draws.integer(2, 3);
        for (int i = 0; i < count; ++i) {
            terms.push_back({draws.uniform(0.5, 2.0) * (draws.integer(0, 1) ? 1.0 : -1.0), order(), location()});
        }
        return LinearConstraint(draws.uniform(-2.0, 2.0), std::move(terms));
    }
    }
}

/// Floor for checks with absolute thresholds: rounding in
/// sum_k beta_k * shift_k grows like |y| / rcond.
inline constexpr double kWellConditioned = 1e-6;

/// Mixed absolute/relative/linear constraints, 1 <= n <= 6, with a
/// support matrix satisfying rcond >= min_rcond and g from the
/// v + x^2 - sin(3x + v) family.

inline RandomProblem random_problem(Draws& draws, double min_rcond = kRcondWarning) {
    for (;;) {
        const auto n = static_cast<std::size_t>(draws.integer(1, 6));
        ConstraintSet set;
        for (std::size_t k = 0; k < n; ++k) {
            set.add(random_constraint(draws));
        }
        std::vector<BasisMember> members;
        for (std::size_t i = 0; i < n; ++i) {
            members.push_back(random_member(draws, i));
        }
        BasisFamily basis(std::move(members));
        if (!validate(set).empty()) {
            continue;
        }
        const SupportMatrix support = assemble_support_matrix(set, basis);
        if (support.rank < n || support.rcond < min_rcond) {
            continue;
        }
        const double v = draws.uniform(0.0, 2.0 * std::numbers::pi);
        return {std::move(set), std::move(basis),
                FreeFunction::parse("v + x^2 - sin(3*x + v)", {{"v", v}}), v};
    }
}

/// Simple constraints (single unit-weight term) at distinct slots.
inline RandomProblem random_simple_problem(Draws& draws) {
    for (;;) {
        const auto n = static_cast<std::size_t>(draws.integer(1, 6));
        ConstraintSet set;
        for (std::size_t k = 0; k < n; ++k) {
            set.add(derivative_constraint(draws.uniform(-1.5, 1.5), static_cast<unsigned>(draws.integer(0, 2)),
                                          draws.uniform(-2.0, 2.0)));
        }
        std::vector<BasisMember> members;
        for (std::size_t i = 0; i < n; ++i) {
            members.push_back(random_member(draws, i));
        }
        BasisFamily basis(std::move(members));
        const SupportMatrix support = assemble_support_matrix(set, basis);
        if (!validate(set).empty() || support.rank < n || support.rcond < kRcondWarning) {
            continue;
        }
        const double v = draws.uniform(0.0, 2.0 * std::numbers::pi);
        return {std::move(set), std::move(basis),
                FreeFunction::parse("v + x^2 - sin(3*x + v)", {{"v", v}}), v};
    }
}

} // namespace cexpr::testing
