#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace minsurf::detail {

/// Shortest %g rendering that reads back to exactly the same double.
inline std::string shortest(double x) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline std::string significant(double x, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

} // namespace minsurf::detail
