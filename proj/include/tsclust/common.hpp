#pragma once

#include <charconv>
#include <functional>
#include <iostream>
#include <string>
#include <string_view>
#include <system_error>

namespace tsclust {

// Sink for non-fatal conditions (constant series, degenerate index
// denominators, single-rep summaries). Replaceable so embedders and tests
// can capture messages instead of writing to stderr.
using WarningHandler = std::function<void(std::string_view)>;

inline WarningHandler& warning_handler() {
    static WarningHandler handler = [](std::string_view msg) {
        std::cerr << "tsclust: warning: " << msg << '\n';
    };
    return handler;
}

inline void warn(std::string_view msg) {
    if (warning_handler()) warning_handler()(msg);
}

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, static_cast<std::size_t>(ptr - buf));
}

}  // namespace tsclust
