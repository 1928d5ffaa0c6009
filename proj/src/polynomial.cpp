#include "monoq/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "monoq/text.hpp"

namespace monoq {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
    strip();
}

Polynomial Polynomial::monomial(const Rational& coefficient, unsigned power) {
    std::vector<Rational> c(power + 1);
    c[power] = coefficient;
    return Polynomial(std::move(c));
}

void Polynomial::strip() {
    while (!coefficients_.empty() && coefficients_.back().is_zero()) {
        coefficients_.pop_back();
    }
}

Rational Polynomial::coefficient(unsigned power) const {
    return power < coefficients_.size() ? coefficients_[power] : Rational();
}

std::optional<unsigned> Polynomial::degree() const {
    if (coefficients_.empty()) {
        return std::nullopt;
    }
    return static_cast<unsigned>(coefficients_.size() - 1);
}

Rational Polynomial::eval(const Rational& t) const {
    Rational acc;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

Polynomial Polynomial::compose_scaled(const Rational& scale) const {
    std::vector<Rational> c = coefficients_;
    Rational factor(1);
    for (auto& coeff : c) {
        coeff = coeff * factor;
        factor = factor * scale;
    }
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a.coefficient(static_cast<unsigned>(i)) + b.coefficient(static_cast<unsigned>(i));
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + Rational(-1) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> c(a.coefficients_.size() + b.coefficients_.size() - 1);
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
        for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
            c[i + j] += a.coefficients_[i] * b.coefficients_[j];
        }
    }
    return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& scalar, const Polynomial& p) {
    std::vector<Rational> c = p.coefficients_;
    for (auto& coeff : c) {
        coeff = coeff * scalar;
    }
    return Polynomial(std::move(c));
}

std::string Polynomial::to_string(char variable) const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = coefficients_.size(); i-- > 0;) {
        const Rational& c = coefficients_[i];
        if (c.is_zero()) {
            continue;
        }
        const bool negative = c.sign() < 0;
        const Rational magnitude = negative ? -c : c;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (i == 0) {
            out += magnitude.to_string();
            continue;
        }
        if (magnitude != Rational(1)) {
            out += magnitude.to_string() + "*";
        }
        out += variable;
        if (i > 1) {
            out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::string_view variables) : text_(text), variables_(variables) {}

    Polynomial parse() {
        Polynomial result;
        skip_ws();
        if (at_end()) {
            fail("empty polynomial");
        }
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            result = result + parse_monomial(sign);
            skip_ws();
        }
        return result;
    }

private:
    Polynomial parse_monomial(int sign) {
        Rational coeff(sign);
        bool have_coeff = false;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = coeff * parse_number();
            have_coeff = true;
            skip_ws();
            if (at_end() || peek() != '*') {
                return Polynomial::monomial(coeff, 0);
            }
            ++pos_;
            skip_ws();
        }
        if (at_end() || variables_.find(peek()) == std::string_view::npos) {
            fail(have_coeff ? "expected variable after '*'" : "expected coefficient or variable");
        }
        ++pos_;
        skip_ws();
        unsigned power = 1;
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            const auto start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected exponent after '^'");
            }
            power = static_cast<unsigned>(text::parse_int(text_.substr(start, pos_ - start)));
        }
        return Polynomial::monomial(coeff, power);
    }

    Rational parse_number() {
        const auto start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        auto save = pos_;
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            const auto den_start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
            }
            if (den_start == pos_) {
                fail("expected denominator");
            }
            std::string num(text_.substr(start, save - start));
            return Rational::parse(num + "/" + std::string(text_.substr(den_start, pos_ - den_start)));
        }
        pos_ = save;
        return Rational::parse(text_.substr(start, save - start));
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("polynomial syntax error at position " + std::to_string(pos_) + ": " + what + " in '" +
                    std::string(text_) + "'");
    }

    char peek() const { return text_[pos_]; }
    bool at_end() const { return pos_ >= text_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::string_view variables_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::string_view variables) {
    return PolyParser(text, variables).parse();
}

Rational iterated_difference(const Polynomial& p, const std::vector<Rational>& shifts, const Rational& x) {
    // Inclusion-exclusion over subsets of the shifts.
    const std::size_t m = shifts.size();
    Rational total;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Rational point = x;
        std::size_t bits = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::size_t{1} << i)) {
                point += shifts[i];
                ++bits;
            }
        }
        const Rational value = p.eval(point);
        if ((m - bits) % 2 == 0) {
            total += value;
        } else {
            total -= value;
        }
    }
    return total;
}

bool difference_degree_check(const Polynomial& p, unsigned d, const std::vector<DifferenceSample>& samples) {
    if (samples.empty()) {
        throw Error("difference_degree_check needs at least one sample");
    }
    for (const auto& sample : samples) {
        if (sample.shifts.size() < d + 1) {
            throw Error("difference sample carries fewer than d+1 shifts");
        }
        std::vector<Rational> shifts(sample.shifts.begin(), sample.shifts.begin() + d + 1);
        for (const auto& g : shifts) {
            if (g.is_zero()) {
                throw Error("difference shifts must be nonzero");
            }
        }
        if (!iterated_difference(p, shifts, sample.point).is_zero()) {
            return false;
        }
    }
    return true;
}

}  // namespace monoq
