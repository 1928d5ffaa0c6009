#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "monoq/coloring.hpp"
#include "monoq/pattern.hpp"
#include "monoq/window.hpp"

namespace monoq {

using ElementIndex = std::uint32_t;

/// One instantiation point whose term values all lie in the window.
struct Candidate {
    std::size_t x_index = 0;
    std::size_t y_index = 0;
    /// Window index of each term value, in term order.
    std::vector<ElementIndex> values;
};

inline constexpr std::uint64_t kDefaultPairCap = 200'000'000;

/// Instance geometry of a family inside a window, independent of any coloring.
///
/// Pairs (x, y) are scanned in window order. A pair is kept when y != 0, x
/// satisfies the family's nonzero rule, every term value lies in the window,
/// and (if requested) the values are pairwise distinct. Pairs producing a
/// value tuple already seen are dropped, so each entry is a distinct instance.
/// When no term depends on y, only the first nonzero y is scanned.
class CandidateTable {
public:
    static CandidateTable build(const Family& family, const Window& window, std::uint64_t pair_cap = kDefaultPairCap);

    const Family& family() const { return family_; }
    const Window& window() const { return window_; }
    const std::vector<Candidate>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    /// Sorted, duplicate-free element sets that must not be monochromatic;
    /// one per distinct set (supersets of other sets are kept).
    const std::vector<std::vector<ElementIndex>>& constraint_sets() const { return constraints_; }

    /// Rebuilds the Witness of entry `i` under coloring `c`.
    Witness witness(std::size_t i, const Coloring& c) const;

    bool is_monochromatic(std::size_t i, const std::vector<Color>& colors) const;

private:
    CandidateTable(Family family, Window window) : family_(std::move(family)), window_(std::move(window)) {}

    Family family_;
    Window window_;
    std::vector<Candidate> entries_;
    std::vector<std::vector<ElementIndex>> constraints_;
};

CandidateTable build_candidates(const Family& family, const Window& window);

/// First monochromatic candidate in table order, if any.
std::optional<Witness> find_witness(const CandidateTable& table, const Coloring& c);
std::optional<Witness> find_witness(const Family& family, const Coloring& c);

/// Up to `limit` monochromatic candidates in table order.
std::vector<Witness> all_witnesses(const CandidateTable& table, const Coloring& c, std::size_t limit);

/// Index of the first monochromatic entry, or empty.
std::optional<std::size_t> first_monochromatic(const CandidateTable& table, const std::vector<Color>& colors);

}  // namespace monoq
