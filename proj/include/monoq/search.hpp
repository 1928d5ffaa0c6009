#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoq/coloring.hpp"
#include "monoq/detector.hpp"
#include "monoq/pattern.hpp"
#include "monoq/window.hpp"

namespace monoq {

struct SearchBudget {
    /// Decision limit; 0 means unlimited.
    std::uint64_t max_nodes = 0;
    /// Wall-clock limit; 0 means unlimited.
    double max_seconds = 0;
};

struct SearchOptions {
    /// Force the first decision to color 0 and introduce new colors in order.
    bool symmetry = true;
    /// Decision depth at which the tree is cut into independent subtrees.
    /// Fixed independently of `workers` so exhaustive runs report the same
    /// node count and trace hash for every worker count.
    unsigned split_depth = 4;
    unsigned workers = 1;
    SearchBudget budget;
};

enum class Outcome { kAvoiding, kExhausted, kBudgetExceeded };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

struct SearchResult {
    Outcome outcome = Outcome::kBudgetExceeded;
    /// Present iff outcome is kAvoiding.
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;
    /// FNV-1a hash of the decision trace (subtree hashes folded in order).
    std::uint64_t trace_hash = 0;
    double seconds = 0;

    // Parameter echo.
    std::string family;
    std::string window;
    int r = 0;
    SearchOptions options;
};

/// Decides whether `table`'s window admits an r-coloring with no
/// monochromatic candidate. Backtracking over window elements, most
/// constrained first, with elimination of colors that would complete a
/// monochromatic candidate.
SearchResult search_avoiding(const CandidateTable& table, int r, const SearchOptions& options = {});
SearchResult search_avoiding(const Family& family, const Window& window, int r, const SearchOptions& options = {});

}  // namespace monoq
