#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoq/rational.hpp"

namespace monoq {

/// Dense univariate polynomial over Q; coefficient i multiplies t^i.
/// Trailing zeros are always stripped, so the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);

    static Polynomial monomial(const Rational& coefficient, unsigned power);
    /// The identity polynomial t.
    static Polynomial variable() { return monomial(Rational(1), 1); }

    /// Parses a sum of `c*t^k` monomials, e.g. `t^2 - 3/2*t`. Any single
    /// lowercase letter in `variables` is accepted as the indeterminate.
    static Polynomial parse(std::string_view text, std::string_view variables = "t");

    const std::vector<Rational>& coefficients() const { return coefficients_; }
    Rational coefficient(unsigned power) const;

    /// Highest power with nonzero coefficient; empty for the zero polynomial.
    std::optional<unsigned> degree() const;
    bool is_zero() const { return coefficients_.empty(); }
    bool has_zero_constant_term() const { return coefficient(0).is_zero(); }

    /// Horner evaluation.
    Rational eval(const Rational& t) const;

    /// The polynomial t -> p(scale * t).
    Polynomial compose_scaled(const Rational& scale) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& c, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coefficients_ == b.coefficients_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Renders highest power first, e.g. `t^2 - 3/2*t`; the zero polynomial prints `0`.
    std::string to_string(char variable = 't') const;

private:
    void strip();

    std::vector<Rational> coefficients_;
};

/// One evaluation site for the finite-difference degree test: the operators
/// delta_g for g in `shifts` are applied in turn and the result read at `point`.
struct DifferenceSample {
    std::vector<Rational> shifts;
    Rational point;
};

/// Value of (delta_{g_1} ... delta_{g_m} p)(x) with (delta_g p)(x) = p(x + g) - p(x).
Rational iterated_difference(const Polynomial& p, const std::vector<Rational>& shifts, const Rational& x);

/// True iff d+1 difference operators (the first d+1 shifts of each sample)
/// reduce p to zero at every sample point. Samples must carry at least d+1
/// nonzero shifts.
bool difference_degree_check(const Polynomial& p, unsigned d, const std::vector<DifferenceSample>& samples);

}  // namespace monoq
