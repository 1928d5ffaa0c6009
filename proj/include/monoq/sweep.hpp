#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monoq/pattern.hpp"
#include "monoq/search.hpp"
#include "monoq/window.hpp"

namespace monoq {

/// A window shape with one free size parameter N swept over [first, last]:
/// `int:A..B` means int:1..N, `farey:A..B[:flags]` means farey:N, and
/// `mgrid:p,q:A..B[:+sign]` means mgrid:p,q:N.
struct WindowFamily {
    Window::Shape shape;
    std::int64_t first = 1;
    std::int64_t last = 1;

    static WindowFamily parse(std::string_view spec);
    Window at(std::int64_t n) const;
};

struct SweepRow {
    std::int64_t n = 0;
    std::string window;
    std::size_t window_size = 0;
    SearchResult result;
    /// Missing for budget-exceeded rows.
    std::optional<nlohmann::json> certificate;
};

/// Per-N outcome profile. No monotonicity in N is assumed.
struct ThresholdReport {
    std::string family;
    int r = 0;
    std::vector<SweepRow> rows;
    /// First N whose search was exhausted, if any.
    std::optional<std::int64_t> minimal_exhausted;
};

ThresholdReport threshold_sweep(const Family& family, int r, const WindowFamily& windows,
                                const SearchOptions& options, bool stop_at_first_exhausted);

}  // namespace monoq
