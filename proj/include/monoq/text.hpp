#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the text parsers.
namespace monoq::text {

std::string_view trim(std::string_view s);

/// Splits on `sep`; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);

/// Parses a base-10 signed integer, rejecting trailing garbage.
std::int64_t parse_int(std::string_view s);

template <typename Range, typename Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn) {
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) {
            out += sep;
        }
        first = false;
        out += fn(item);
    }
    return out;
}

}  // namespace monoq::text
