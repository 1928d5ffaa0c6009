#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monoq/rational.hpp"

namespace monoq {

/// Integers lo..hi, ascending.
struct IntegerInterval {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
};

/// {a/b in lowest terms : |a| <= n, 1 <= b <= n}. Ordered 0 first, then by
/// (denominator, numerator) with signed numerators ascending.
struct FareyWindow {
    std::int64_t n = 1;
    bool include_zero = true;
    bool include_negatives = false;
};

/// {s * prod p_i^{e_i} : |e_i| <= exponent_bound}. Ordered by exponent vector
/// (lexicographic), negatives after all positives. Never contains 0.
struct MultiplicativeGrid {
    std::vector<std::int64_t> primes;
    std::int64_t exponent_bound = 1;
    bool include_sign = false;
};

inline constexpr std::size_t kDefaultWindowCap = 10'000'000;

/// A finite ground set with a canonical total order. Cheap to copy: the
/// element list and the lazily built membership index are shared.
class Window {
public:
    using Shape = std::variant<IntegerInterval, FareyWindow, MultiplicativeGrid>;

    explicit Window(Shape shape, std::size_t cap = kDefaultWindowCap);

    /// Parses `int:lo..hi`, `farey:N[:+zero|-zero][:+neg]`, `mgrid:p1,p2,...:E[:+sign]`.
    static Window parse(std::string_view spec, std::size_t cap = kDefaultWindowCap);

    /// Cardinality computed from the shape alone, without enumerating.
    static std::size_t cardinality(const Shape& shape);

    const Shape& shape() const;
    std::size_t size() const;
    const std::vector<Rational>& elements() const;
    const Rational& at(std::size_t index) const { return elements()[index]; }

    bool contains(const Rational& q) const { return index_of(q).has_value(); }
    std::optional<std::size_t> index_of(const Rational& q) const;

    /// Canonical spec string; `Window::parse(w.spec())` reproduces w.
    std::string spec() const;

    friend bool operator==(const Window& a, const Window& b) { return a.spec() == b.spec(); }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

std::vector<Rational> enumerate(const Window& w);

}  // namespace monoq
