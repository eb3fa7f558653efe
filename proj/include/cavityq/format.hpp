#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace cavityq {

// Shortest decimal string that parses back to exactly the same double.
// Locale-independent, so CSV output is byte-identical across runs and
// machines.  Non-finite values map to the bare tokens inf/-inf/nan.
inline std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0.0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace cavityq
