#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace monoq {

/// Thrown for malformed input text and violated preconditions across the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact fraction in lowest terms with a positive denominator.
///
/// Zero is always 0/1 and the sign lives on the numerator. Values are
/// immutable once constructed; arithmetic returns new normalized values.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
    explicit Rational(const mpz_class& value) : value_(value) {}

    /// Normalizing constructor; throws Error("degenerate rational") on a zero denominator.
    static Rational make(const mpz_class& numerator, const mpz_class& denominator);
    static Rational make(long numerator, long denominator);

    /// Parses `a/b` or `a` with an optional leading `-`.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    /// Integer value if it fits in int64; only meaningful when is_integer().
    bool fits_int64() const;
    std::int64_t to_int64() const;

    Rational operator-() const;
    Rational inverse() const;
    Rational pow(long exponent) const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& other);
    Rational& operator-=(const Rational& other);
    Rational& operator*=(const Rational& other);

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    std::string to_string() const;
    std::size_t hash() const;

    const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace monoq

template <>
struct std::hash<monoq::Rational> {
    std::size_t operator()(const monoq::Rational& q) const noexcept { return q.hash(); }
};
