#pragma once

#include <string>

namespace cexpr {

/// Shortest decimal text that reads back to exactly the same double.
/// Negative zero is printed as "0".
std::string format_number(double value);

} // namespace cexpr
