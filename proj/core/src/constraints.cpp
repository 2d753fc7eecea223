#include "cexpr/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "cexpr/errors.hpp"
#include "cexpr/format.hpp"

namespace cexpr {

namespace {

bool same_slot(const ConstraintTerm& a, const ConstraintTerm& b) {
    return a.order == b.order && a.location == b.location;
}

// Merge in first-appearance order, then drop zero weights.
std::vector<ConstraintTerm> merge_terms(const std::vector<ConstraintTerm>& terms) {
    std::vector<ConstraintTerm> merged;
    for (const auto& term : terms) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const ConstraintTerm& m) { return same_slot(m, term); });
        if (it == merged.end()) {
            merged.push_back(term);
        } else {
            it->weight += term.weight;
        }
    }
    std::erase_if(merged, [](const ConstraintTerm& t) { return t.weight == 0.0; });
    return merged;
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool is_duplicate(const LinearConstraint& a, const LinearConstraint& b) {
    const auto ta = a.normalized_terms();
    const auto tb = b.normalized_terms();
    if (ta.empty() || ta.size() != tb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (!same_slot(ta[i], tb[i])) {
            return false;
        }
    }
    const double ratio = tb.front().weight / ta.front().weight;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (!close(tb[i].weight, ratio * ta[i].weight)) {
            return false;
        }
    }
    return close(b.value(), ratio * a.value());
}

std::string derivative_symbol(unsigned order) {
    if (order <= 3) {
        return "y" + std::string(order, '\'');
    }
    return "y^(" + std::to_string(order) + ")";
}

} // namespace

LinearConstraint::LinearConstraint(double value, std::vector<ConstraintTerm> terms)
    : value_(value), terms_(merge_terms(terms)) {
    if (terms_.empty()) {
        throw InvalidProblem("constraint has no nonzero terms");
    }
}

LinearConstraint LinearConstraint::unchecked(double value, std::vector<ConstraintTerm> terms) {
    LinearConstraint c;
    c.value_ = value;
    c.terms_ = std::move(terms);
    return c;
}

unsigned LinearConstraint::min_order() const {
    unsigned result = terms_.empty() ? 0 : terms_.front().order;
    for (const auto& t : terms_) {
        result = std::min(result, t.order);
    }
    return result;
}

unsigned LinearConstraint::max_order() const {
    unsigned result = 0;
    for (const auto& t : terms_) {
        result = std::max(result, t.order);
    }
    return result;
}

bool LinearConstraint::is_simple() const {
    return terms_.size() == 1 && terms_.front().weight == 1.0;
}

std::vector<ConstraintTerm> LinearConstraint::normalized_terms() const {
    auto merged = merge_terms(terms_);
    std::sort(merged.begin(), merged.end(), [](const ConstraintTerm& a, const ConstraintTerm& b) {
        return a.location != b.location ? a.location < b.location : a.order < b.order;
    });
    return merged;
}

std::string LinearConstraint::to_string() const {
    std::string text = format_number(value_) + " =";
    bool first = true;
    for (const auto& t : terms_) {
        const double magnitude = std::abs(t.weight);
        if (first) {
            text += t.weight < 0.0 ? " -" : " ";
        } else {
            text += t.weight < 0.0 ? " - " : " + ";
        }
        first = false;
        if (magnitude != 1.0) {
            text += format_number(magnitude) + "*";
        }
        text += derivative_symbol(t.order) + "(" + format_number(t.location) + ")";
    }
    return text;
}

LinearConstraint point_constraint(double x, double y) {
    return LinearConstraint(y, {ConstraintTerm{1.0, 0, x}});
}

LinearConstraint derivative_constraint(double x, unsigned d, double v) {
    return LinearConstraint(v, {ConstraintTerm{1.0, d, x}});
}

LinearConstraint relative_constraint(double xi, unsigned di, double xj, unsigned dj) {
    if (xi == xj && di == dj) {
        throw DegenerateRelative("relative constraint compares y^(" + std::to_string(di) + ")(" +
                                 format_number(xi) + ") with itself");
    }
    return LinearConstraint(0.0, {ConstraintTerm{1.0, di, xi}, ConstraintTerm{-1.0, dj, xj}});
}

ConstraintSet::ConstraintSet(std::initializer_list<LinearConstraint> constraints)
    : constraints_(constraints) {}

ConstraintSet::ConstraintSet(std::vector<LinearConstraint> constraints)
    : constraints_(std::move(constraints)) {}

void ConstraintSet::add(LinearConstraint constraint) { constraints_.push_back(std::move(constraint)); }

bool ConstraintSet::all_simple() const {
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [](const LinearConstraint& c) { return c.is_simple(); });
}

std::vector<Violation> validate(const ConstraintSet& set) {
    std::vector<Violation> violations;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& terms = set[i].terms();
        const std::string where = "constraint " + std::to_string(i + 1);
        if (terms.empty()) {
            violations.push_back({Violation::Kind::EmptyConstraint, i, i, where + ": empty constraint"});
            continue;
        }
        if (std::any_of(terms.begin(), terms.end(), [](const ConstraintTerm& t) { return t.weight == 0.0; })) {
            violations.push_back({Violation::Kind::ZeroWeight, i, i, where + ": zero weight term"});
        }
        bool unmerged = false;
        for (std::size_t a = 0; a < terms.size() && !unmerged; ++a) {
            for (std::size_t b = a + 1; b < terms.size(); ++b) {
                if (same_slot(terms[a], terms[b])) {
                    unmerged = true;
                    break;
                }
            }
        }
        if (unmerged) {
            violations.push_back({Violation::Kind::UnmergedTerms, i, i, where + ": unmerged terms"});
        }
        if (set[i].normalized_terms().empty()) {
            violations.push_back(
                {Violation::Kind::DegenerateRelative, i, i, where + ": degenerate relative (terms cancel)"});
        }
    }
    for (std::size_t j = 0; j < set.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (is_duplicate(set[i], set[j])) {
                violations.push_back({Violation::Kind::Duplicate, j, i,
                                      "constraint " + std::to_string(j + 1) + ": duplicate constraint (repeats " +
                                          std::to_string(i + 1) + ")"});
                break;
            }
        }
    }
    return violations;
}

std::string to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::EmptyConstraint: return "empty constraint";
    case Violation::Kind::ZeroWeight: return "zero weight";
    case Violation::Kind::UnmergedTerms: return "unmerged terms";
    case Violation::Kind::DegenerateRelative: return "degenerate relative";
    case Violation::Kind::Duplicate: return "duplicate constraint";
    }
    return "";
}

} // namespace cexpr
