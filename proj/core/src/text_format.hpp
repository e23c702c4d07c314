#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace queenscan::detail {

// Canonical number text for CSV/manifest output: integral values print with
// no fractional part, everything else uses the shortest round-trip form.
inline std::string format_real(double value) {
    if (std::isfinite(value) && value == std::floor(value) &&
        std::abs(value) < 9.007199254740992e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

}  // namespace queenscan::detail
