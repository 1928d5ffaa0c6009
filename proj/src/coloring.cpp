#include "monoq/coloring.hpp"

#include <algorithm>
#include <limits>

#include "monoq/text.hpp"

namespace monoq {

Coloring::Coloring(Window window, int r, std::vector<Color> colors)
    : window_(std::move(window)), r_(r), colors_(std::move(colors)) {
    if (r_ < 1 || r_ > kMaxColors) {
        throw Error("number of colors must be in 1.." + std::to_string(kMaxColors));
    }
    if (colors_.size() != window_.size()) {
        throw Error("coloring length mismatch: " + std::to_string(colors_.size()) + " colors for " +
                    std::to_string(window_.size()) + " window elements");
    }
    for (std::size_t i = 0; i < colors_.size(); ++i) {
        if (colors_[i] >= r_) {
            throw Error("color out of range at position " + std::to_string(i) + ": " +
                        std::to_string(colors_[i]) + " >= r=" + std::to_string(r_));
        }
    }
}

std::optional<Color> Coloring::color_of(const Rational& q) const {
    const auto idx = window_.index_of(q);
    if (!idx) {
        return std::nullopt;
    }
    return colors_[*idx];
}

std::vector<Color> canonical_colors(const std::vector<Color>& colors) {
    std::vector<int> relabel(kMaxColors, -1);
    int next = 0;
    std::vector<Color> out(colors.size());
    for (std::size_t i = 0; i < colors.size(); ++i) {
        auto& slot = relabel[colors[i]];
        if (slot < 0) {
            slot = next++;
        }
        out[i] = static_cast<Color>(slot);
    }
    return out;
}

Coloring Coloring::canonical() const {
    return Coloring(window_, r_, canonical_colors(colors_));
}

Coloring Coloring::permuted(const std::vector<Color>& perm) const {
    if (perm.size() != static_cast<std::size_t>(r_)) {
        throw Error("color permutation has wrong length");
    }
    std::vector<Color> out(colors_.size());
    std::transform(colors_.begin(), colors_.end(), out.begin(), [&](Color c) { return perm[c]; });
    return Coloring(window_, r_, std::move(out));
}

ColorClassPartition color_classes(const Coloring& c) {
    ColorClassPartition p;
    p.classes.resize(static_cast<std::size_t>(c.colors_count()));
    for (std::size_t i = 0; i < c.colors().size(); ++i) {
        p.classes[c.at(i)].push_back(i);
    }
    return p;
}

ColoringStream::ColoringStream(Window window, int r, bool symmetry)
    : window_(std::move(window)), r_(r), symmetry_(symmetry), colors_(window_.size(), 0) {
    if (r_ < 1 || r_ > kMaxColors) {
        throw Error("number of colors must be in 1.." + std::to_string(kMaxColors));
    }
}

bool ColoringStream::advance() {
    const std::size_t n = colors_.size();
    for (std::size_t i = n; i-- > 0;) {
        int limit = r_ - 1;
        if (symmetry_) {
            int seen = -1;
            for (std::size_t j = 0; j < i; ++j) {
                seen = std::max(seen, static_cast<int>(colors_[j]));
            }
            limit = std::min(limit, seen + 1);
        }
        if (colors_[i] < limit) {
            ++colors_[i];
            std::fill(colors_.begin() + static_cast<std::ptrdiff_t>(i) + 1, colors_.end(), Color{0});
            return true;
        }
    }
    return false;
}

std::optional<Coloring> ColoringStream::next() {
    if (done_) {
        return std::nullopt;
    }
    if (started_ && !advance()) {
        done_ = true;
        return std::nullopt;
    }
    started_ = true;
    return Coloring(window_, r_, colors_);
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

}  // namespace

std::uint64_t count_colorings(std::size_t n, int r, bool symmetry) {
    if (!symmetry) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            total = sat_mul(total, static_cast<std::uint64_t>(r));
        }
        return total;
    }
    // Stirling numbers of the second kind, S(i, j) for j <= r.
    std::vector<std::uint64_t> row(static_cast<std::size_t>(r) + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = static_cast<std::size_t>(r); j >= 1; --j) {
            row[j] = sat_add(sat_mul(j, row[j]), row[j - 1]);
        }
        row[0] = 0;
    }
    std::uint64_t total = n == 0 ? 1 : 0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(r); ++j) {
        total = sat_add(total, row[j]);
    }
    return total;
}

std::vector<Coloring> materialize_colorings(const Window& window, int r, bool symmetry, std::uint64_t budget) {
    const auto count = count_colorings(window.size(), r, symmetry);
    if (count > budget) {
        throw Error("coloring enumeration budget exceeded: " + std::to_string(count) + " > " +
                    std::to_string(budget));
    }
    std::vector<Coloring> out;
    out.reserve(count);
    ColoringStream stream(window, r, symmetry);
    while (auto c = stream.next()) {
        out.push_back(std::move(*c));
    }
    return out;
}

Coloring parse_coloring(std::string_view text) {
    const auto s = text::trim(text);
    const auto r_pos = s.find(" r=");
    const auto lb = s.find('[');
    const auto rb = s.rfind(']');
    if (r_pos == std::string_view::npos || lb == std::string_view::npos || rb == std::string_view::npos || lb < r_pos ||
        rb < lb) {
        throw Error("coloring text must look like '<window> r=<r> [c0,c1,...]'");
    }
    Window window = Window::parse(s.substr(0, r_pos));
    const auto r = text::parse_int(s.substr(r_pos + 3, lb - r_pos - 3));
    if (r < 1 || r > kMaxColors) {
        throw Error("number of colors must be in 1.." + std::to_string(kMaxColors));
    }
    std::vector<Color> colors;
    const auto body = text::trim(s.substr(lb + 1, rb - lb - 1));
    if (!body.empty()) {
        for (auto item : text::split(body, ',')) {
            const auto v = text::parse_int(item);
            if (v < 0 || v >= r) {
                throw Error("color out of range: " + std::to_string(v) + " with r=" + std::to_string(r));
            }
            colors.push_back(static_cast<Color>(v));
        }
    }
    return Coloring(std::move(window), static_cast<int>(r), std::move(colors));
}

std::string serialize_coloring(const Coloring& c) {
    return c.window().spec() + " r=" + std::to_string(c.colors_count()) + " [" +
           text::join(c.colors(), ",", [](Color v) { return std::to_string(static_cast<int>(v)); }) + "]";
}

}  // namespace monoq
