#include "monoq/localize.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <variant>

namespace monoq {

namespace {

constexpr int kMaxLocalizeColors = 12;

// Grid points with every |e_i| <= bound, in window order.
std::vector<Rational> grid_points(const MultiplicativeGrid& g, std::int64_t bound, bool with_sign) {
    std::vector<Rational> out;
    std::vector<std::int64_t> e(g.primes.size(), -bound);
    while (true) {
        Rational q(1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            q *= Rational(g.primes[i]).pow(e[i]);
        }
        out.push_back(q);
        std::size_t k = e.size();
        while (k > 0 && ++e[k - 1] > bound) {
            e[k - 1] = -bound;
            --k;
        }
        if (k == 0) {
            break;
        }
    }
    if (with_sign) {
        const auto n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(-out[i]);
        }
    }
    return out;
}

const MultiplicativeGrid& grid_of(const Coloring& c) {
    const auto* g = std::get_if<MultiplicativeGrid>(&c.window().shape());
    if (g == nullptr) {
        throw Error("localization needs a coloring of an mgrid window, got " + c.window().spec());
    }
    return *g;
}

std::vector<Rational> core_of(const MultiplicativeGrid& g) {
    return grid_points(g, g.exponent_bound - g.exponent_bound / 2, g.include_sign);
}

}  // namespace

std::optional<LocalizationReport> localize_colors(const Coloring& c, const ShapeF& t, std::size_t max_f,
                                                  const LocalizeOptions& options) {
    const auto& g = grid_of(c);
    if (t.mode() != GroupMode::kMul) {
        throw Error("localization works in the multiplicative group");
    }
    if (max_f == 0) {
        throw Error("localization needs max |F| >= 1");
    }
    const int r = c.colors_count();
    if (r > kMaxLocalizeColors) {
        throw Error("localization supports at most 12 colors");
    }
    const Window& w = c.window();

    std::vector<ElementSet> classes(static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < w.size(); ++i) {
        classes[c.at(i)].insert(w.at(i));
    }

    struct Thick {
        std::uint32_t mask;
        Rational witness;
    };
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << r); ++m) {
        masks.push_back(m);
    }
    std::stable_sort(masks.begin(), masks.end(),
                     [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
    std::vector<Thick> thick;
    for (auto m : masks) {
        ElementSet u;
        bool empty_class = false;
        for (int k = 0; k < r; ++k) {
            if (m >> k & 1) {
                empty_class = empty_class || classes[k].empty();
                u.insert(classes[k].begin(), classes[k].end());
            }
        }
        if (empty_class) {
            continue;
        }
        if (auto x = is_thick_for(u, w, t)) {
            thick.push_back({m, *x});
        }
    }
    if (thick.empty()) {
        return std::nullopt;
    }

    // Shift candidates: the identity, then the other positive points in window order.
    std::vector<Rational> shifts{Rational(1)};
    for (const auto& q : grid_points(g, g.exponent_bound / 2, false)) {
        if (q != Rational(1)) {
            shifts.push_back(q);
        }
    }
    const auto core = core_of(g);
    // col[x][j] = color of core[x] / shifts[j].
    std::vector<std::vector<std::uint32_t>> col(core.size(), std::vector<std::uint32_t>(shifts.size()));
    for (std::size_t x = 0; x < core.size(); ++x) {
        for (std::size_t j = 0; j < shifts.size(); ++j) {
            const auto color = c.color_of(core[x] / shifts[j]);
            if (!color) {
                throw Error("internal: core point leaves the window under a shift");
            }
            col[x][j] = *color;
        }
    }
    auto first_fit = [&](std::uint32_t cov) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < thick.size(); ++k) {
            if ((thick[k].mask & ~cov) == 0) {
                return k;
            }
        }
        return std::nullopt;
    };
    auto satisfied = [&](const std::vector<std::size_t>& f) {
        std::size_t count = 0;
        for (std::size_t x = 0; x < core.size(); ++x) {
            std::uint32_t cov = 0;
            for (auto j : f) {
                cov |= std::uint32_t{1} << col[x][j];
            }
            count += first_fit(cov).has_value();
        }
        return count;
    };

    std::optional<std::vector<std::size_t>> chosen;
    {
        std::vector<std::size_t> f;
        std::size_t best = 0;
        while (f.size() < std::min(max_f, shifts.size()) && best < core.size()) {
            std::size_t pick = shifts.size();
            std::size_t pick_count = 0;
            for (std::size_t j = 0; j < shifts.size(); ++j) {
                if (std::find(f.begin(), f.end(), j) != f.end()) {
                    continue;
                }
                f.push_back(j);
                const auto n = satisfied(f);
                f.pop_back();
                if (pick == shifts.size() || n > pick_count) {
                    pick = j;
                    pick_count = n;
                }
            }
            f.push_back(pick);
            best = pick_count;
        }
        if (best == core.size()) {
            chosen = f;
        }
    }
    const auto cap = std::min({max_f, options.exhaustive_shape_size, shifts.size()});
    for (std::size_t k = 1; !chosen && k <= cap; ++k) {
        std::vector<std::size_t> f(k);
        for (std::size_t i = 0; i < k; ++i) {
            f[i] = i;
        }
        while (true) {
            if (satisfied(f) == core.size()) {
                chosen = f;
                break;
            }
            std::size_t i = k;
            while (i > 0 && f[i - 1] == shifts.size() - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++f[i - 1];
            for (std::size_t m = i; m < k; ++m) {
                f[m] = f[m - 1] + 1;
            }
        }
    }
    if (!chosen) {
        return std::nullopt;
    }

    LocalizationReport report;
    for (auto j : *chosen) {
        report.shape.push_back(shifts[j]);
    }
    report.core = core;
    std::vector<std::size_t> used;  // thick index per report slot
    for (std::size_t x = 0; x < core.size(); ++x) {
        std::uint32_t cov = 0;
        for (auto j : *chosen) {
            cov |= std::uint32_t{1} << col[x][j];
        }
        const auto k = *first_fit(cov);
        auto it = std::find(used.begin(), used.end(), k);
        if (it == used.end()) {
            used.push_back(k);
            it = used.end() - 1;
        }
        report.coverage.push_back(static_cast<std::size_t>(it - used.begin()));
    }
    for (auto k : used) {
        std::vector<int> ys;
        for (int m = 0; m < r; ++m) {
            if (thick[k].mask >> m & 1) {
                ys.push_back(m);
            }
        }
        report.color_sets.push_back(std::move(ys));
        report.thickness_witnesses.push_back(thick[k].witness);
    }
    const auto problem = verify_localization(report, c, t, max_f);
    if (!problem.empty()) {
        throw Error("internal: localization report failed re-verification: " + problem);
    }
    return report;
}

std::string verify_localization(const LocalizationReport& report, const Coloring& c, const ShapeF& t,
                                std::size_t max_f) {
    const auto& g = grid_of(c);
    if (report.shape.empty() || report.shape.size() > max_f) {
        return "shape F has " + std::to_string(report.shape.size()) + " elements, allowed 1.." +
               std::to_string(max_f);
    }
    if (report.color_sets.size() != report.thickness_witnesses.size()) {
        return "color set and witness lists differ in length";
    }
    if (report.core != core_of(g)) {
        return "core does not match the window's interior";
    }
    if (report.coverage.size() != report.core.size()) {
        return "coverage table does not match the core";
    }
    for (std::size_t l = 0; l < report.color_sets.size(); ++l) {
        const auto& ys = report.color_sets[l];
        for (const auto& tx : t.translate(report.thickness_witnesses[l])) {
            const auto color = c.color_of(tx);
            if (!color || std::find(ys.begin(), ys.end(), static_cast<int>(*color)) == ys.end()) {
                return "(a) fails for Y_" + std::to_string(l) + " at " + tx.to_string();
            }
        }
    }
    for (std::size_t i = 0; i < report.core.size(); ++i) {
        const auto l = report.coverage[i];
        if (l >= report.color_sets.size()) {
            return "coverage entry out of range";
        }
        const auto& x = report.core[i];
        std::vector<int> seen;
        for (const auto& f : report.shape) {
            const auto color = c.color_of(x / f);
            if (!color) {
                return "(b) fails: " + x.to_string() + " / " + f.to_string() + " is outside the window";
            }
            seen.push_back(*color);
        }
        for (int m : report.color_sets[l]) {
            if (std::find(seen.begin(), seen.end(), m) == seen.end()) {
                return "(b) fails at " + x.to_string() + ": color " + std::to_string(m) + " missing";
            }
        }
    }
    return {};
}

}  // namespace monoq
