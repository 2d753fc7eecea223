#include "cexpr/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace cexpr {

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

} // namespace cexpr
