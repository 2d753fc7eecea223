#include "cexpr/errors.hpp"

#include "cexpr/format.hpp"

namespace cexpr {

ParseError::ParseError(std::size_t position, std::string expected)
    : Error("parse error at position " + std::to_string(position) + ": expected " + expected),
      position_(position),
      expected_(std::move(expected)) {}

DomainError::DomainError(double x, const std::string& what)
    : Error(what + " at x = " + format_number(x)), x_(x) {}

OrderExceeded::OrderExceeded(unsigned requested, unsigned max_order)
    : Error("derivative order " + std::to_string(requested) + " exceeds declared maximum " +
            std::to_string(max_order)),
      requested_(requested),
      max_order_(max_order) {}

UndefinedAt::UndefinedAt(std::size_t member, double x, unsigned order)
    : Error("basis member " + std::to_string(member + 1) + " undefined at x = " +
            format_number(x) + " (order " + std::to_string(order) + ")"),
      member_(member),
      x_(x),
      order_(order) {}

BasisUndefinedAtConstraint::BasisUndefinedAtConstraint(std::size_t member, double x, unsigned order)
    : Error("basis member " + std::to_string(member + 1) + " undefined at constraint location x = " +
            format_number(x) + " (order " + std::to_string(order) + ")"),
      member_(member),
      x_(x) {}

FreeFunctionUndefined::FreeFunctionUndefined(double x, unsigned order, const std::string& cause)
    : Error("free function undefined at x = " + format_number(x) + " (order " +
            std::to_string(order) + "): " + cause),
      x_(x),
      order_(order) {}

SingularSupport::SingularSupport(std::size_t rank, std::size_t size, double rcond, std::string hint)
    : Error("singular support matrix: rank " + std::to_string(rank) + " of " + std::to_string(size) +
            ", rcond " + format_number(rcond) + "; " + hint),
      rank_(rank),
      size_(size),
      rcond_(rcond),
      hint_(std::move(hint)) {}

DuplicateNode::DuplicateNode(double node)
    : Error("duplicate interpolation node x = " + format_number(node)), node_(node) {}

} // namespace cexpr
