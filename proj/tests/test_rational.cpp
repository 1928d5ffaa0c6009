#include <doctest.h>

#include <random>

#include "monoq/polynomial.hpp"
#include "monoq/rational.hpp"

using monoq::DifferenceSample;
using monoq::Error;
using monoq::Polynomial;
using monoq::Rational;

TEST_CASE("rational normalization") {
    CHECK(Rational::make(6, -4).to_string() == "-3/2");
    CHECK(Rational::make(0, 7).to_string() == "0");
    CHECK(Rational::make(0, 7).denominator() == 1);
    CHECK(Rational::make(5, 1) == Rational(5));
    CHECK_THROWS_WITH_AS(Rational::make(1, 0), "degenerate rational", Error);
    CHECK(Rational::parse("-10/4") == Rational::make(-5, 2));
    CHECK(Rational::parse(" 7 ") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
}

TEST_CASE("rational arithmetic is exact") {
    const Rational third = Rational::make(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(third * Rational(3) == Rational(1));
    CHECK(Rational(2).pow(-3) == Rational::make(1, 8));
    CHECK(Rational::make(-2, 3).pow(0) == Rational(1));
    CHECK(Rational::make(-2, 3).inverse() == Rational::make(-3, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
    CHECK_THROWS_AS(Rational(0).inverse(), Error);
    CHECK(Rational::make(1, 2) < Rational::make(2, 3));
}

TEST_CASE("rational field laws on random values") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-50, 50);
    auto rnd = [&] {
        long den = 0;
        while (den == 0) {
            den = d(rng);
        }
        return Rational::make(d(rng), den);
    };
    for (int i = 0; i < 500; ++i) {
        const auto a = rnd();
        const auto b = rnd();
        const auto c = rnd();
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a - b + b == a);
        if (!b.is_zero()) {
            CHECK(a / b * b == a);
        }
        CHECK(std::hash<Rational>{}(a) == std::hash<Rational>{}(Rational::parse(a.to_string())));
    }
}

TEST_CASE("polynomial evaluation") {
    const auto sq = Polynomial::parse("t^2");
    CHECK(sq.eval(Rational::make(3, 2)) == Rational::make(9, 4));
    const auto cubic = Polynomial::parse("t^3 - t");
    CHECK(cubic.eval(Rational(2)) == Rational(6));
    CHECK(cubic.eval(Rational(0)) == Rational(0));
    CHECK(Polynomial::parse("t^2 - 3/2*t").to_string() == "t^2 - 3/2*t");
    CHECK(Polynomial::parse("2*t + t").to_string() == "3*t");
    CHECK(Polynomial::parse("t - t").is_zero());
    CHECK_FALSE(Polynomial::parse("t - t").degree().has_value());
    CHECK(Polynomial::parse("t^2").compose_scaled(Rational(2)) == Polynomial::parse("4*t^2"));
    CHECK_THROWS_AS(Polynomial::parse("t^"), Error);
    CHECK_THROWS_AS(Polynomial::parse("t + + 1"), Error);
}

TEST_CASE("polynomial round trip through text") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rational> coeffs;
        for (int k = 0; k < 5; ++k) {
            coeffs.push_back(Rational::make(d(rng), 1 + (d(rng) + 6) % 3));
        }
        const Polynomial p(coeffs);
        CHECK(Polynomial::parse(p.to_string()) == p);
    }
}

TEST_CASE("finite difference degree check") {
    const auto sq = Polynomial::parse("t^2");
    const std::vector<DifferenceSample> samples = {
        {{Rational(1), Rational(2), Rational(3)}, Rational(0)},
        {{Rational::make(1, 2), Rational(-3), Rational(7)}, Rational::make(5, 3)},
    };
    CHECK(monoq::difference_degree_check(sq, 2, samples));
    CHECK_FALSE(monoq::difference_degree_check(sq, 1, {{{Rational(1), Rational(1)}, Rational(0)}}));
    // Second difference of t^2 with unit shifts is the constant 2.
    CHECK(monoq::iterated_difference(sq, {Rational(1), Rational(1)}, Rational(0)) == Rational(2));
    CHECK(monoq::difference_degree_check(Polynomial(), 0, {{{Rational(4)}, Rational(9)}}));
    CHECK_THROWS_AS(monoq::difference_degree_check(sq, 2, {}), Error);
    CHECK_THROWS_AS(monoq::difference_degree_check(sq, 2, {{{Rational(1)}, Rational(0)}}), Error);
}

TEST_CASE("difference check agrees with degree on random polynomials") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> coeffs;
        const int len = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < len; ++k) {
            coeffs.push_back(Rational(d(rng)));
        }
        const Polynomial p(coeffs);
        std::vector<DifferenceSample> samples;
        for (int s = 0; s < 4; ++s) {
            DifferenceSample smp;
            for (int k = 0; k < 6; ++k) {
                long v = 0;
                while (v == 0) {
                    v = d(rng);
                }
                smp.shifts.push_back(Rational(v));
            }
            smp.point = Rational(d(rng));
            samples.push_back(smp);
        }
        const unsigned deg = p.degree().value_or(0);
        CHECK(monoq::difference_degree_check(p, deg, samples));
    }
}
