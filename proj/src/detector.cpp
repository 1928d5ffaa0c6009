#include "monoq/detector.hpp"

#include <algorithm>
#include <unordered_set>

namespace monoq {

namespace {

struct IndexTupleHash {
    std::size_t operator()(const std::vector<ElementIndex>& v) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto i : v) {
            h = (h ^ i) * 1099511628211ULL;
        }
        return h;
    }
};

bool pairwise_distinct(std::vector<ElementIndex> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

}  // namespace

CandidateTable CandidateTable::build(const Family& family, const Window& window, std::uint64_t pair_cap) {
    CandidateTable table(family, window);
    const auto& elems = window.elements();
    const std::size_t n = elems.size();
    const bool need_y = family.depends_on_y();
    const std::uint64_t pairs = need_y ? static_cast<std::uint64_t>(n) * n : n;
    if (pairs > pair_cap) {
        throw Error("candidate cap exceeded: " + std::to_string(pairs) + " pairs");
    }
    const bool nonzero_x = family.requires_nonzero_x();

    std::vector<std::size_t> y_indices;
    for (std::size_t j = 0; j < n; ++j) {
        if (!elems[j].is_zero()) {
            y_indices.push_back(j);
            if (!need_y) {
                break;
            }
        }
    }

    std::unordered_set<std::vector<ElementIndex>, IndexTupleHash> seen_tuples;
    std::unordered_set<std::vector<ElementIndex>, IndexTupleHash> seen_sets;
    std::vector<ElementIndex> values(family.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& x = elems[i];
        if (nonzero_x && x.is_zero()) {
            continue;
        }
        for (std::size_t j : y_indices) {
            const Rational& y = elems[j];
            bool inside = true;
            for (std::size_t t = 0; t < family.size() && inside; ++t) {
                const auto idx = window.index_of(family.terms()[t].eval(x, y));
                inside = idx.has_value();
                if (inside) {
                    values[t] = static_cast<ElementIndex>(*idx);
                }
            }
            if (!inside) {
                continue;
            }
            if (family.options().require_distinct && !pairwise_distinct(values)) {
                continue;
            }
            if (!seen_tuples.insert(values).second) {
                continue;
            }
            table.entries_.push_back(Candidate{i, j, values});
            std::vector<ElementIndex> set = values;
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            if (seen_sets.insert(set).second) {
                table.constraints_.push_back(std::move(set));
            }
        }
    }
    return table;
}

CandidateTable build_candidates(const Family& family, const Window& window) {
    return CandidateTable::build(family, window);
}

bool CandidateTable::is_monochromatic(std::size_t i, const std::vector<Color>& colors) const {
    const auto& v = entries_[i].values;
    const Color c = colors[v.front()];
    return std::all_of(v.begin() + 1, v.end(), [&](ElementIndex e) { return colors[e] == c; });
}

Witness CandidateTable::witness(std::size_t i, const Coloring& c) const {
    const Candidate& cand = entries_[i];
    Witness w;
    w.x = window_.at(cand.x_index);
    w.y = window_.at(cand.y_index);
    w.color = c.at(cand.values.front());
    for (auto v : cand.values) {
        w.values.push_back(window_.at(v));
    }
    return w;
}

namespace {

void check_window(const CandidateTable& table, const Coloring& c) {
    if (!(table.window() == c.window())) {
        throw Error("coloring window " + c.window().spec() + " does not match candidate window " +
                    table.window().spec());
    }
}

}  // namespace

std::optional<std::size_t> first_monochromatic(const CandidateTable& table, const std::vector<Color>& colors) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.is_monochromatic(i, colors)) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<Witness> find_witness(const CandidateTable& table, const Coloring& c) {
    check_window(table, c);
    if (auto i = first_monochromatic(table, c.colors())) {
        return table.witness(*i, c);
    }
    return std::nullopt;
}

std::optional<Witness> find_witness(const Family& family, const Coloring& c) {
    return find_witness(CandidateTable::build(family, c.window()), c);
}

std::vector<Witness> all_witnesses(const CandidateTable& table, const Coloring& c, std::size_t limit) {
    check_window(table, c);
    std::vector<Witness> out;
    for (std::size_t i = 0; i < table.size() && out.size() < limit; ++i) {
        if (table.is_monochromatic(i, c.colors())) {
            out.push_back(table.witness(i, c));
        }
    }
    return out;
}

}  // namespace monoq
