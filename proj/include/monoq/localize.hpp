#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monoq/coloring.hpp"
#include "monoq/large_sets.hpp"

namespace monoq {

/// Multiplicative localization of a coloring of an mgrid window.
///
/// (a) for every l, the union of the color classes in `color_sets[l]` contains
///     T * thickness_witnesses[l];
/// (b) for every core element x, with l = coverage[i], every color m in
///     color_sets[l] occurs among the colors of x / f, f in F.
struct LocalizationReport {
    std::vector<std::vector<int>> color_sets;
    std::vector<Rational> thickness_witnesses;
    std::vector<Rational> shape;
    std::vector<Rational> core;
    std::vector<std::size_t> coverage;
};

struct LocalizeOptions {
    /// Largest |F| tried exhaustively after the greedy pass fails.
    std::size_t exhaustive_shape_size = 3;
};

/// Core: grid elements whose exponents are bounded by E - E/2; F is drawn from
/// positive grid elements with exponents bounded by E/2, so x / f stays in the
/// window. Throws Error unless the coloring lives on an mgrid window. Every
/// returned report has passed verify_localization.
std::optional<LocalizationReport> localize_colors(const Coloring& c, const ShapeF& t, std::size_t max_f,
                                                  const LocalizeOptions& options = {});

/// Re-checks (a) and (b) directly against the coloring. Returns an empty
/// string on success, otherwise a description of the first failure.
std::string verify_localization(const LocalizationReport& report, const Coloring& c, const ShapeF& t,
                                std::size_t max_f);

}  // namespace monoq
