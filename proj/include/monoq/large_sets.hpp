#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monoq/rational.hpp"
#include "monoq/window.hpp"

// Finite-window analogs of thick, syndetic, piecewise syndetic and IP_r sets.
// Every notion here is parametric: the shapes, translates and cores are
// explicit arguments, and nothing claims the asymptotic property itself.
namespace monoq {

/// (Q, +) or (Q \ {0}, *).
enum class GroupMode { kAdd, kMul };

std::string to_string(GroupMode m);
GroupMode group_mode_from_string(const std::string& s);

Rational group_identity(GroupMode m);
Rational group_op(GroupMode m, const Rational& a, const Rational& b);
/// a * b^{-1} in the group.
Rational group_div(GroupMode m, const Rational& a, const Rational& b);

using ElementSet = std::set<Rational>;

/// Nonempty finite set of group elements (no zero in multiplicative mode).
class ShapeF {
public:
    ShapeF(std::vector<Rational> elements, GroupMode mode);

    const std::vector<Rational>& elements() const { return elements_; }
    GroupMode mode() const { return mode_; }
    std::size_t size() const { return elements_.size(); }

    /// {f o x : f in F}.
    std::vector<Rational> translate(const Rational& x) const;

private:
    std::vector<Rational> elements_;
    GroupMode mode_;
};

struct IpSetSpec {
    std::vector<Rational> generators;
    GroupMode mode = GroupMode::kAdd;
};

inline constexpr std::size_t kMaxIpGenerators = 24;

/// Sums (products) over all nonempty subsets of the generators; duplicates collapse.
ElementSet finite_sums(const IpSetSpec& spec);

/// Some x in w (window order) with F o x contained in A.
std::optional<Rational> is_thick_for(const ElementSet& a, const Window& w, const ShapeF& f);

struct SyndeticResult {
    bool covered = false;
    std::vector<Rational> uncovered;
};

/// Whether F o A covers every core element. Throws Error unless c o f^{-1}
/// lies in w for every c in core and f in F.
SyndeticResult is_syndetic_for(const ElementSet& a, const Window& w, const ShapeF& f,
                               const std::vector<Rational>& core);

struct PiecewiseWitness {
    ShapeF shape;
    /// x with T o x contained in (F o A) intersected with w.
    Rational translate;
};

/// Exhaustive search for F with |F| <= max_f such that F o A is T-thick in w.
std::optional<PiecewiseWitness> piecewise_syndetic_witness(const ElementSet& a, const Window& w, std::size_t max_f,
                                                           const ShapeF& t);

struct IpSearchOptions {
    /// Require all 2^r - 1 subset sums to be pairwise distinct (non-degenerate IP_r).
    bool distinct_sums = true;
    /// Largest r searched exhaustively; beyond it seeded random restarts are used.
    std::size_t exhaustive_cap = 4;
    std::uint64_t seed = 0x5eed;
    std::size_t restarts = 64;
    std::uint64_t node_budget = 200'000;
};

struct IpSearchResult {
    std::optional<std::vector<Rational>> generators;
    /// True when an empty answer is a proof of absence.
    bool exhaustive = true;
};

/// Generators in ascending order whose finite sums (products) all lie in A.
IpSearchResult find_ip_r(const ElementSet& a, std::size_t r, GroupMode mode, const IpSearchOptions& options = {});

struct IpStarResult {
    bool holds = false;
    bool exhaustive = true;
    /// An IP_r structure inside w \ A when `holds` is false.
    std::optional<std::vector<Rational>> avoiding_generators;
};

/// A meets every IP_r structure of w, i.e. w \ A contains none.
IpStarResult is_ip_r_star(const ElementSet& a, const Window& w, std::size_t r, GroupMode mode,
                          const IpSearchOptions& options = {});

/// Value table u : S^degree -> G, row-major over index tuples.
struct Monomial {
    unsigned degree = 1;
    std::vector<Rational> table;
};

/// Product of monomial mappings alpha -> prod_{s in alpha^d} u(s) on finite
/// subsets of S = {0..index_size-1}. Degree-0 monomials must be the identity,
/// so the empty set always maps to the identity.
class PolynomialMapping {
public:
    PolynomialMapping(std::size_t index_size, std::vector<Monomial> monomials, GroupMode mode);

    std::size_t index_size() const { return index_size_; }
    GroupMode mode() const { return mode_; }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    /// `alpha` lists distinct indices in S.
    Rational eval(const std::vector<std::size_t>& alpha) const;

    /// Largest monomial degree of this representation.
    unsigned degree_upper_bound() const;

private:
    std::size_t index_size_;
    std::vector<Monomial> monomials_;
    GroupMode mode_;
};

}  // namespace monoq
