#include "cexpr/basis.hpp"

#include <charconv>
#include <cmath>

#include "cexpr/errors.hpp"

namespace cexpr {

namespace {

// Exact for integer-valued x while the result fits in the mantissa.
double integer_power(double x, unsigned n) {
    double result = 1.0;
    double base = x;
    while (n != 0) {
        if (n & 1U) {
            result *= base;
        }
        base *= base;
        n >>= 1U;
    }
    return result;
}

// k (k-1) ... (k-r+1)
double falling_factorial(unsigned k, unsigned r) {
    double result = 1.0;
    for (unsigned i = 0; i < r; ++i) {
        result *= static_cast<double>(k - i);
    }
    return result;
}

// k (k+1) ... (k+r-1)
double rising_factorial(unsigned k, unsigned r) {
    double result = 1.0;
    for (unsigned i = 0; i < r; ++i) {
        result *= static_cast<double>(k + i);
    }
    return result;
}

double factorial(unsigned n) { return falling_factorial(n, n); }

unsigned parse_power(std::string_view text, std::string_view descriptor) {
    unsigned value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
        throw InvalidProblem("bad power in basis descriptor '" + std::string(descriptor) + "'");
    }
    return value;
}

} // namespace

BasisMember BasisMember::monomial(unsigned k) { return {Kind::Monomial, k}; }
BasisMember BasisMember::scaled_monomial(unsigned k) { return {Kind::ScaledMonomial, k}; }
BasisMember BasisMember::exp() { return {Kind::Exp, 0}; }
BasisMember BasisMember::sin() { return {Kind::Sin, 0}; }
BasisMember BasisMember::cos() { return {Kind::Cos, 0}; }
BasisMember BasisMember::ln() { return {Kind::Ln, 0}; }
BasisMember BasisMember::reciprocal(unsigned k) { return {Kind::Reciprocal, k}; }

BasisMember BasisMember::composite(std::string text, const ConstantMap& constants) {
    BasisMember member(Kind::Composite, 0);
    member.expression_.emplace(parse(text, constants));
    member.text_ = std::move(text);
    return member;
}

BasisMember BasisMember::from_descriptor(std::string_view descriptor, const ConstantMap& constants) {
    const auto colon = descriptor.find(':');
    const std::string_view head = descriptor.substr(0, colon);
    const std::string_view tail =
        colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    if (head == "expr" && has_arg) {
        return composite(std::string(tail), constants);
    }
    if (head == "monomial" && has_arg) {
        return monomial(parse_power(tail, descriptor));
    }
    if (head == "scaled-monomial" && has_arg) {
        return scaled_monomial(parse_power(tail, descriptor));
    }
    if (head == "recip" && has_arg) {
        return reciprocal(parse_power(tail, descriptor));
    }
    if (!has_arg) {
        if (head == "exp") return exp();
        if (head == "sin") return sin();
        if (head == "cos") return cos();
        if (head == "ln") return ln();
    }
    throw InvalidProblem("unknown basis descriptor '" + std::string(descriptor) + "'");
}

double BasisMember::eval(double x, unsigned order) const {
    switch (kind_) {
    case Kind::Monomial:
        if (order > power_) {
            return 0.0;
        }
        return falling_factorial(power_, order) * integer_power(x, power_ - order);
    case Kind::ScaledMonomial:
        if (order > power_) {
            return 0.0;
        }
        return integer_power(x, power_ - order) / factorial(power_ - order);
    case Kind::Exp:
        return std::exp(x);
    case Kind::Sin:
        switch (order % 4) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        case 2: return -std::sin(x);
        default: return -std::cos(x);
        }
    case Kind::Cos:
        switch (order % 4) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
        }
    case Kind::Ln: {
        if (!(x > 0.0)) {
            throw DomainError(x, "ln undefined for x <= 0");
        }
        if (order == 0) {
            return std::log(x);
        }
        const double sign = (order % 2 == 1) ? 1.0 : -1.0;
        return sign * factorial(order - 1) / integer_power(x, order);
    }
    case Kind::Reciprocal: {
        if (x == 0.0) {
            throw DomainError(x, "x^(-k) undefined at x = 0");
        }
        const double sign = (order % 2 == 0) ? 1.0 : -1.0;
        return sign * rising_factorial(power_, order) / integer_power(x, power_ + order);
    }
    case Kind::Composite: {
        const double value = expression_->eval(x, order);
        if (!std::isfinite(value)) {
            throw DomainError(x, "non-finite value");
        }
        return value;
    }
    }
    return 0.0;
}

bool BasisMember::is_defined(double x, unsigned order) const {
    switch (kind_) {
    case Kind::Ln: return x > 0.0;
    case Kind::Reciprocal: return x != 0.0;
    case Kind::Composite:
        try {
            (void)eval(x, order);
            return true;
        } catch (const DomainError&) {
            return false;
        }
    default: return std::isfinite(x);
    }
}

std::string BasisMember::undefined_set() const {
    switch (kind_) {
    case Kind::Ln: return "x <= 0";
    case Kind::Reciprocal: return "x = 0";
    case Kind::Composite: return "where " + text_ + " or its derivatives are undefined";
    default: return "";
    }
}

std::string BasisMember::descriptor() const {
    switch (kind_) {
    case Kind::Monomial: return "monomial:" + std::to_string(power_);
    case Kind::ScaledMonomial: return "scaled-monomial:" + std::to_string(power_);
    case Kind::Exp: return "exp";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Ln: return "ln";
    case Kind::Reciprocal: return "recip:" + std::to_string(power_);
    case Kind::Composite: return "expr:" + text_;
    }
    return "";
}

std::string BasisMember::label() const {
    const std::string k = std::to_string(power_);
    switch (kind_) {
    case Kind::Monomial:
        return power_ == 0 ? "1" : power_ == 1 ? "x" : "x^" + k;
    case Kind::ScaledMonomial:
        return power_ == 0 ? "1" : power_ == 1 ? "x" : "x^" + k + "/" + k + "!";
    case Kind::Exp: return "exp(x)";
    case Kind::Sin: return "sin(x)";
    case Kind::Cos: return "cos(x)";
    case Kind::Ln: return "ln(x)";
    case Kind::Reciprocal: return "x^(-" + k + ")";
    case Kind::Composite: return "(" + text_ + ")";
    }
    return "";
}

BasisFamily::BasisFamily(std::vector<BasisMember> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw InvalidProblem("basis family must have at least one member");
    }
}

BasisFamily BasisFamily::monomials(std::size_t count) {
    std::vector<BasisMember> members;
    members.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        members.push_back(BasisMember::monomial(static_cast<unsigned>(k)));
    }
    return BasisFamily(std::move(members));
}

BasisFamily BasisFamily::from_descriptors(const std::vector<std::string>& descriptors,
                                          const ConstantMap& constants) {
    std::vector<BasisMember> members;
    members.reserve(descriptors.size());
    for (const auto& d : descriptors) {
        members.push_back(BasisMember::from_descriptor(d, constants));
    }
    return BasisFamily(std::move(members));
}

double BasisFamily::eval_member(std::size_t index, double x, unsigned order) const {
    try {
        return members_.at(index).eval(x, order);
    } catch (const DomainError&) {
        throw UndefinedAt(index, x, order);
    }
}

std::vector<double> BasisFamily::eval_row(double x, unsigned order) const {
    std::vector<double> row(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        row[i] = eval_member(i, x, order);
    }
    return row;
}

bool BasisFamily::all_monomials() const {
    for (const auto& m : members_) {
        if (m.kind() != BasisMember::Kind::Monomial && m.kind() != BasisMember::Kind::ScaledMonomial) {
            return false;
        }
    }
    return true;
}

} // namespace cexpr
