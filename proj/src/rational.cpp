#include "monoq/rational.hpp"

#include <cctype>
#include <ostream>

#include "monoq/text.hpp"

namespace monoq {

Rational Rational::make(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) {
        throw Error("degenerate rational");
    }
    Rational q;
    q.value_ = mpq_class(numerator, denominator);
    q.value_.canonicalize();
    return q;
}

Rational Rational::make(long numerator, long denominator) {
    return make(mpz_class(numerator), mpz_class(denominator));
}

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw Error("expected integer in rational '" + std::string(whole) + "'");
    }
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw Error("invalid character in rational '" + std::string(whole) + "'");
        }
    }
    return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text::trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s = text::trim(s.substr(1));
    }
    const auto slash = s.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (slash == std::string_view::npos) {
        num = parse_integer(s, text);
    } else {
        num = parse_integer(text::trim(s.substr(0, slash)), text);
        den = parse_integer(text::trim(s.substr(slash + 1)), text);
    }
    if (negative) {
        num = -num;
    }
    return make(num, den);
}

bool Rational::fits_int64() const {
    return is_integer() && value_.get_num().fits_slong_p();
}

std::int64_t Rational::to_int64() const {
    return value_.get_num().get_si();
}

Rational Rational::operator-() const {
    Rational q;
    q.value_ = -value_;
    return q;
}

Rational Rational::inverse() const {
    if (is_zero()) {
        throw Error("degenerate rational");
    }
    Rational q;
    q.value_ = 1 / value_;
    q.value_.canonicalize();
    return q;
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    Rational q;
    mpz_pow_ui(q.value_.get_num_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(q.value_.get_den_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return q;
}

Rational operator+(const Rational& a, const Rational& b) {
    Rational q;
    q.value_ = a.value_ + b.value_;
    return q;
}

Rational operator-(const Rational& a, const Rational& b) {
    Rational q;
    q.value_ = a.value_ - b.value_;
    return q;
}

Rational operator*(const Rational& a, const Rational& b) {
    Rational q;
    q.value_ = a.value_ * b.value_;
    return q;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw Error("degenerate rational");
    }
    Rational q;
    q.value_ = a.value_ / b.value_;
    return q;
}

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
}

std::string Rational::to_string() const {
    return value_.get_str(10);
}

std::size_t Rational::hash() const {
    auto limb_hash = [](const mpz_class& z) {
        std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
    };
    std::size_t h = limb_hash(value_.get_num());
    return h ^ (limb_hash(value_.get_den()) * 31 + 0x517cc1b727220a95ULL);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.to_string();
}

}  // namespace monoq
