#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cexpr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is the 0-based character offset.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected);

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

/// A function (or one of its derivatives) is undefined at x: ln/sqrt of a
/// nonpositive argument, division by zero, abs' at 0, non-finite result.
class DomainError : public Error {
public:
    DomainError(double x, const std::string& what);
    double x() const noexcept { return x_; }

private:
    double x_;
};

class OrderExceeded : public Error {
public:
    OrderExceeded(unsigned requested, unsigned max_order);
    unsigned requested() const noexcept { return requested_; }
    unsigned max_order() const noexcept { return max_order_; }

private:
    unsigned requested_;
    unsigned max_order_;
};

/// A basis member (0-based index) is undefined at x for the requested order.
class UndefinedAt : public Error {
public:
    UndefinedAt(std::size_t member, double x, unsigned order);
    std::size_t member() const noexcept { return member_; }
    double x() const noexcept { return x_; }
    unsigned order() const noexcept { return order_; }

private:
    std::size_t member_;
    double x_;
    unsigned order_;
};

class DegenerateRelative : public Error {
public:
    using Error::Error;
};

/// The problem is structurally invalid (size mismatch, empty set, ...).
class InvalidProblem : public Error {
public:
    using Error::Error;
};

class BasisUndefinedAtConstraint : public Error {
public:
    BasisUndefinedAtConstraint(std::size_t member, double x, unsigned order);
    std::size_t member() const noexcept { return member_; }
    double x() const noexcept { return x_; }

private:
    std::size_t member_;
    double x_;
};

class FreeFunctionUndefined : public Error {
public:
    FreeFunctionUndefined(double x, unsigned order, const std::string& cause);
    double x() const noexcept { return x_; }
    unsigned order() const noexcept { return order_; }

private:
    double x_;
    unsigned order_;
};

/// The support matrix is rank deficient or too badly conditioned to invert.
class SingularSupport : public Error {
public:
    SingularSupport(std::size_t rank, std::size_t size, double rcond, std::string hint);
    std::size_t rank() const noexcept { return rank_; }
    std::size_t size() const noexcept { return size_; }
    double rcond() const noexcept { return rcond_; }
    const std::string& hint() const noexcept { return hint_; }

private:
    std::size_t rank_;
    std::size_t size_;
    double rcond_;
    std::string hint_;
};

class AnchorViolation : public Error {
public:
    using Error::Error;
};

class DuplicateNode : public Error {
public:
    explicit DuplicateNode(double node);
    double node() const noexcept { return node_; }

private:
    double node_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

} // namespace cexpr
