#pragma once

// Reference implementations used only by tests. None of this shares code with
// the detector, the search or the CNF encoder: families are plain lambdas,
// detection is a double loop over the window, and satisfiability is a small
// DPLL solver.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "monoq/rational.hpp"

namespace oracle {

using monoq::Rational;

struct Family {
    std::string key;
    bool nonzero_x = false;
    std::function<std::vector<Rational>(const Rational&, const Rational&)> values;
};

inline std::vector<Family> catalog() {
    using R = Rational;
    return {
        {"schur", false, [](const R& x, const R& y) { return std::vector<R>{x, y, x + y}; }},
        {"vdw(2)", false, [](const R& x, const R& y) { return std::vector<R>{x, x + y, x + R(2) * y}; }},
        {"moreira(1,[t^2])", true, [](const R& x, const R& y) { return std::vector<R>{x, x * y, x + y * y}; }},
        {"bowen-sabok(1)", true, [](const R& x, const R& y) { return std::vector<R>{x, y, x * y, x + y}; }},
        {"bowen-sabok-power(-2,1)", true,
         [](const R& x, const R& y) { return std::vector<R>{x, y, x / (y * y), x + y}; }},
        {"thm1-quotient(1,[t])", true, [](const R& x, const R& y) { return std::vector<R>{x, x / y, x + y}; }},
        {"thm1-product(1,[t])", true, [](const R& x, const R& y) { return std::vector<R>{x, x * y, x + y}; }},
        {"question-hs", true, [](const R& x, const R& y) { return std::vector<R>{x, y, x * y, x + y}; }},
    };
}

inline Family family_by_key(const std::string& key) {
    for (auto& f : catalog()) {
        if (f.key == key) {
            return f;
        }
    }
    throw std::runtime_error("no oracle family " + key);
}

/// Colors keyed by value; elements outside the map are outside the window.
using ValueColoring = std::map<Rational, int>;

inline ValueColoring to_value_coloring(const std::vector<Rational>& elements, const std::vector<int>& colors) {
    ValueColoring m;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        m[elements[i]] = colors[i];
    }
    return m;
}

/// Double loop over (x, y) in the window.
inline bool has_monochromatic(const Family& f, const ValueColoring& c, bool distinct = false) {
    for (const auto& [x, cx] : c) {
        if (f.nonzero_x && x.is_zero()) {
            continue;
        }
        for (const auto& [y, cy] : c) {
            (void)cy;
            if (y.is_zero()) {
                continue;
            }
            const auto vals = f.values(x, y);
            bool mono = true;
            for (const auto& v : vals) {
                auto it = c.find(v);
                if (it == c.end() || it->second != cx) {
                    mono = false;
                    break;
                }
            }
            if (mono && distinct) {
                std::set<Rational> s(vals.begin(), vals.end());
                mono = s.size() == vals.size();
            }
            if (mono) {
                return true;
            }
        }
    }
    return false;
}

/// Number of (x, y) pairs that give a monochromatic value tuple.
inline std::size_t count_monochromatic_pairs(const Family& f, const ValueColoring& c) {
    std::size_t n = 0;
    for (const auto& [x, cx] : c) {
        if (f.nonzero_x && x.is_zero()) {
            continue;
        }
        for (const auto& [y, cy] : c) {
            (void)cy;
            if (y.is_zero()) {
                continue;
            }
            bool mono = true;
            for (const auto& v : f.values(x, y)) {
                auto it = c.find(v);
                if (it == c.end() || it->second != cx) {
                    mono = false;
                    break;
                }
            }
            n += mono;
        }
    }
    return n;
}

/// Enumerates all r^n colorings; true when one avoids the family.
inline bool brute_force_avoidable(const Family& f, const std::vector<Rational>& elements, int r) {
    std::vector<int> colors(elements.size(), 0);
    while (true) {
        if (!has_monochromatic(f, to_value_coloring(elements, colors))) {
            return true;
        }
        std::size_t k = 0;
        while (k < colors.size() && ++colors[k] == r) {
            colors[k] = 0;
            ++k;
        }
        if (k == colors.size()) {
            return false;
        }
    }
}

/// Plain DPLL with unit propagation. Returns a model (index v -> value) or nothing.
inline std::optional<std::vector<bool>> dpll(int variables, const std::vector<std::vector<int>>& clauses) {
    std::vector<int> assign(static_cast<std::size_t>(variables) + 1, 0);  // 0 unset, 1 true, -1 false
    std::function<bool()> solve = [&]() -> bool {
        std::vector<int> trail;
        auto undo = [&] {
            for (int v : trail) {
                assign[static_cast<std::size_t>(v)] = 0;
            }
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses) {
                int unset = 0;
                int last = 0;
                bool sat = false;
                for (int lit : cl) {
                    const int a = assign[static_cast<std::size_t>(std::abs(lit))];
                    if (a == 0) {
                        ++unset;
                        last = lit;
                    } else if ((a > 0) == (lit > 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat) {
                    continue;
                }
                if (unset == 0) {
                    undo();
                    return false;
                }
                if (unset == 1) {
                    assign[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
                    trail.push_back(std::abs(last));
                    changed = true;
                }
            }
        }
        int pick = 0;
        for (int v = 1; v <= variables; ++v) {
            if (assign[static_cast<std::size_t>(v)] == 0) {
                pick = v;
                break;
            }
        }
        if (pick == 0) {
            return true;
        }
        for (int val : {1, -1}) {
            assign[static_cast<std::size_t>(pick)] = val;
            if (solve()) {
                return true;
            }
        }
        assign[static_cast<std::size_t>(pick)] = 0;
        undo();
        return false;
    };
    if (!solve()) {
        return std::nullopt;
    }
    std::vector<bool> model(static_cast<std::size_t>(variables) + 1, false);
    for (int v = 1; v <= variables; ++v) {
        model[static_cast<std::size_t>(v)] = assign[static_cast<std::size_t>(v)] > 0;
    }
    return model;
}

inline std::vector<int> random_colors(std::mt19937_64& rng, std::size_t n, int r) {
    std::uniform_int_distribution<int> pick(0, r - 1);
    std::vector<int> c(n);
    for (auto& x : c) {
        x = pick(rng);
    }
    return c;
}

}  // namespace oracle
