#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monoq/polynomial.hpp"
#include "monoq/rational.hpp"

namespace monoq {

namespace term {
struct VarX {};
struct VarY {};
/// c1*x + p(c2*y) with p(0) = 0.
struct Affine {
    Rational x_coeff{1};
    Polynomial poly;
    Rational y_scale{1};
};
/// x * y^exponent; a negative exponent is the quotient x / y^|exponent|.
struct MulPow {
    long exponent = 1;
};
/// x + c with c != 0. Only admitted when a family opts into affine offsets.
struct Offset {
    Rational constant;
};
}  // namespace term

/// One map (x, y) -> Q of a Ramsey family.
class PatternTerm {
public:
    using Variant = std::variant<term::VarX, term::VarY, term::Affine, term::MulPow, term::Offset>;

    static PatternTerm x() { return PatternTerm(term::VarX{}); }
    static PatternTerm y() { return PatternTerm(term::VarY{}); }
    static PatternTerm affine(Rational x_coeff, Polynomial poly, Rational y_scale = Rational(1));
    /// x + p(y).
    static PatternTerm shift(Polynomial poly) { return affine(Rational(1), std::move(poly)); }
    static PatternTerm mul_pow(long exponent);
    static PatternTerm offset(Rational constant);

    const Variant& node() const { return node_; }

    Rational eval(const Rational& x, const Rational& y) const;
    bool uses_x() const;
    bool uses_y() const;
    bool is_mul_pow() const { return std::holds_alternative<term::MulPow>(node_); }
    bool is_offset() const { return std::holds_alternative<term::Offset>(node_); }

    /// True when both terms define the same map Q^2 -> Q.
    bool same_map(const PatternTerm& other) const;

    std::string to_string() const;

    friend bool operator==(const PatternTerm& a, const PatternTerm& b);

private:
    explicit PatternTerm(Variant node) : node_(std::move(node)) {}

    Variant node_;
};

struct FamilyOptions {
    /// Admit `x + c` terms with c != 0 (only to express non-Ramsey examples).
    bool allow_offset = false;
    /// Candidates must have pairwise distinct term values.
    bool require_distinct = false;
    /// Exclude x = 0 even without multiplicative terms.
    bool strict_nonzero_x = false;

    friend bool operator==(const FamilyOptions&, const FamilyOptions&) = default;
};

/// A finite set of pattern terms in x and y plus instantiation constraints.
class Family {
public:
    /// Validates the term list: nonempty, no two terms define the same map,
    /// offsets only when allowed.
    Family(std::vector<PatternTerm> terms, FamilyOptions options = {});

    const std::vector<PatternTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    const FamilyOptions& options() const { return options_; }

    bool requires_nonzero_x() const;
    bool depends_on_y() const;

    /// The k additive polynomials p_i of terms of the form x + p_i(y).
    std::vector<Polynomial> additive_polynomials() const;
    /// Exponents a of the x * y^a terms.
    std::vector<long> exponents() const;

    /// `;`-separated DSL text that parses back to this family.
    std::string to_string() const;

    friend bool operator==(const Family& a, const Family& b) {
        return a.terms_ == b.terms_ && a.options_ == b.options_;
    }

private:
    std::vector<PatternTerm> terms_;
    FamilyOptions options_;
};

/// Parses DSL text such as `x; x/y^1; x + t^2 - 3/2*t`.
Family parse_family(std::string_view text, FamilyOptions options = {});

/// Builds a catalog family from a key such as `vdw(2)` or `thm1-quotient(1,[t])`.
Family builtin_family(std::string_view key, FamilyOptions options = {});

/// Catalog key if the text looks like one, else DSL text.
Family resolve_family(std::string_view text, FamilyOptions options = {});

/// Names accepted by builtin_family, with their argument shapes.
std::vector<std::string> catalog_names();

/// A fixed instance of every catalog entry, used by the regression suites.
std::vector<std::string> catalog_samples();

/// Values of every term at (x, y) in term order; throws Error("invalid
/// instantiation point") when y = 0 or x = 0 is required nonzero.
std::vector<Rational> instantiate(const Family& family, const Rational& x, const Rational& y);

/// A monochromatic instance: all values received `color`.
struct Witness {
    Rational x;
    Rational y;
    int color = 0;
    std::vector<Rational> values;
};

}  // namespace monoq
