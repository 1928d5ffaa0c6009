#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoq/window.hpp"

namespace monoq {

using Color = std::uint8_t;

inline constexpr int kMaxColors = 32;

/// Total map from window positions to {0..r-1}.
class Coloring {
public:
    Coloring(Window window, int r, std::vector<Color> colors);

    const Window& window() const { return window_; }
    int colors_count() const { return r_; }
    const std::vector<Color>& colors() const { return colors_; }

    Color at(std::size_t index) const { return colors_[index]; }
    /// Color of a window element, or empty when q is outside the window.
    std::optional<Color> color_of(const Rational& q) const;

    /// Relabels colors so that first occurrences appear as 0, 1, 2, ...
    Coloring canonical() const;
    /// Applies the color permutation `perm` (color c becomes perm[c]).
    Coloring permuted(const std::vector<Color>& perm) const;

    friend bool operator==(const Coloring& a, const Coloring& b) {
        return a.r_ == b.r_ && a.colors_ == b.colors_ && a.window_ == b.window_;
    }

private:
    Window window_;
    int r_;
    std::vector<Color> colors_;
};

/// Color classes as window-index lists, one per color (possibly empty).
struct ColorClassPartition {
    std::vector<std::vector<std::size_t>> classes;
};

ColorClassPartition color_classes(const Coloring& c);

/// First-occurrence canonical relabelling of a raw color array.
std::vector<Color> canonical_colors(const std::vector<Color>& colors);

/// Streams colorings of a window. Without symmetry every one of r^|w|
/// colorings appears once; with symmetry only canonical representatives
/// (first occurrences of colors in increasing order).
class ColoringStream {
public:
    ColoringStream(Window window, int r, bool symmetry);

    std::optional<Coloring> next();

private:
    bool advance();

    Window window_;
    int r_;
    bool symmetry_;
    bool started_ = false;
    bool done_ = false;
    std::vector<Color> colors_;
};

/// Number of colorings a stream over n elements produces; saturates at UINT64_MAX.
std::uint64_t count_colorings(std::size_t n, int r, bool symmetry);

/// Collects the whole stream; throws Error when more than `budget` colorings would result.
std::vector<Coloring> materialize_colorings(const Window& window, int r, bool symmetry, std::uint64_t budget);

/// Text form `<window-spec> r=<r> [c0,c1,...]`.
Coloring parse_coloring(std::string_view text);
std::string serialize_coloring(const Coloring& c);

}  // namespace monoq
