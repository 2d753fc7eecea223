#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cexpr {

/// One weighted evaluation alpha * y^(order)(location).
struct ConstraintTerm {
    double weight = 1.0;
    unsigned order = 0;
    double location = 0.0;

    friend bool operator==(const ConstraintTerm&, const ConstraintTerm&) = default;
};

/// c = sum_j alpha_j y^(d_j)(x_j).
///
/// The regular constructor normalizes: terms sharing (order, location) are
/// merged by summing weights and zero-weight terms are dropped; the rest keep
/// their order of first appearance. `unchecked` keeps the terms as given so
/// that `validate` can report problems in externally supplied data.
class LinearConstraint {
public:
    LinearConstraint(double value, std::vector<ConstraintTerm> terms);

    static LinearConstraint unchecked(double value, std::vector<ConstraintTerm> terms);

    double value() const noexcept { return value_; }
    const std::vector<ConstraintTerm>& terms() const noexcept { return terms_; }

    /// Smallest derivative order over the terms.
    unsigned min_order() const;
    /// Largest derivative order over the terms.
    unsigned max_order() const;
    /// A single unit-weight term.
    bool is_simple() const;

    /// Merged, sorted, zero-free copy of the terms.
    std::vector<ConstraintTerm> normalized_terms() const;

    /// e.g. "3 = 2*y(-1) - 3.14*y''(2)".
    std::string to_string() const;

private:
    LinearConstraint() = default;

    double value_ = 0.0;
    std::vector<ConstraintTerm> terms_;
};

/// y(x) = y.
LinearConstraint point_constraint(double x, double y);
/// y^(d)(x) = v.
LinearConstraint derivative_constraint(double x, unsigned d, double v);
/// y^(di)(xi) = y^(dj)(xj), i.e. 0 = y^(di)(xi) - y^(dj)(xj).
/// Throws DegenerateRelative when (xi, di) == (xj, dj).
LinearConstraint relative_constraint(double xi, unsigned di, double xj, unsigned dj);

/// Ordered list of constraints; the order fixes support-matrix row order.
class ConstraintSet {
public:
    ConstraintSet() = default;
    ConstraintSet(std::initializer_list<LinearConstraint> constraints);
    explicit ConstraintSet(std::vector<LinearConstraint> constraints);

    void add(LinearConstraint constraint);

    std::size_t size() const noexcept { return constraints_.size(); }
    bool empty() const noexcept { return constraints_.empty(); }
    const LinearConstraint& operator[](std::size_t i) const { return constraints_[i]; }
    const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }

    auto begin() const noexcept { return constraints_.begin(); }
    auto end() const noexcept { return constraints_.end(); }

    /// True when every constraint consists of one unit-weight term.
    bool all_simple() const;

private:
    std::vector<LinearConstraint> constraints_;
};

struct Violation {
    enum class Kind { EmptyConstraint, ZeroWeight, UnmergedTerms, DegenerateRelative, Duplicate };

    Kind kind;
    std::size_t constraint = 0;
    /// For Duplicate: the earlier constraint it repeats.
    std::size_t other = 0;
    std::string message;
};

/// Reports structural problems; an empty result means the set is valid.
/// Constraints whose term lists are proportional with proportional values
/// (including the sign-flipped form of a relative constraint) are duplicates.
/// Proportional terms with inconsistent values are contradictory and are
/// left for the solve to reject.
std::vector<Violation> validate(const ConstraintSet& set);

std::string to_string(Violation::Kind kind);

} // namespace cexpr
