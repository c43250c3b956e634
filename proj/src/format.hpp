#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <string>

namespace affcurve::detail {

/// Shortest decimal that round-trips to the same double.
inline std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

inline std::string sig17(double v) {
    std::array<char, 40> buf{};
    int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace affcurve::detail
