#include <doctest.h>

#include <random>

#include "monoq/pattern.hpp"

using monoq::Error;
using monoq::Family;
using monoq::FamilyOptions;
using monoq::Rational;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("parse and instantiate basic families") {
    const Family schur = monoq::parse_family("x; y; x+y");
    CHECK(schur.size() == 3);
    CHECK(monoq::instantiate(schur, Rational(2), Rational(3)) == ints({2, 3, 5}));
    CHECK(schur == monoq::builtin_family("schur"));

    const Family q = monoq::parse_family("x; x/y; x+y");
    CHECK(monoq::instantiate(q, Rational(6), Rational(2)) == ints({6, 3, 8}));
    CHECK(q.requires_nonzero_x());

    const Family p = monoq::parse_family("x; x*y^2; x+t^2");
    CHECK(monoq::instantiate(p, Rational(4), Rational::make(1, 2)) ==
          std::vector<Rational>{Rational(4), Rational(1), Rational::make(17, 4)});
}

TEST_CASE("catalog family parameters are recoverable") {
    const Family f = monoq::parse_family("x; x/y^1; x+t");
    CHECK(f.size() == 3);
    CHECK(f.exponents() == std::vector<long>{-1});
    REQUIRE(f.additive_polynomials().size() == 1);
    CHECK(f.additive_polynomials()[0] == monoq::Polynomial::variable());
    CHECK(f == monoq::builtin_family("thm1-quotient(1,[t])"));
}

TEST_CASE("offset terms need the flag") {
    CHECK_THROWS_WITH_AS(monoq::parse_family("x; x+3"), doctest::Contains("constant term must be zero"), Error);
    FamilyOptions o;
    o.allow_offset = true;
    const Family f = monoq::parse_family("x; x+3", o);
    CHECK(monoq::instantiate(f, Rational(1), Rational(1)) == ints({1, 4}));
    CHECK_THROWS_AS(monoq::parse_family("x; x + t + 1", o), Error);
}

TEST_CASE("syntax errors report position") {
    CHECK_THROWS_WITH_AS(monoq::parse_family("x; x+@"), doctest::Contains("term 2"), Error);
    CHECK_THROWS_WITH_AS(monoq::parse_family("x; x*y^0"), doctest::Contains("nonzero"), Error);
    CHECK_THROWS_AS(monoq::parse_family(""), Error);
    CHECK_THROWS_AS(monoq::parse_family("x; x"), Error);
    CHECK_THROWS_AS(monoq::parse_family("x; 0*x + y"), Error);
    CHECK_THROWS_AS(monoq::builtin_family("nosuch"), Error);
    CHECK_THROWS_AS(monoq::builtin_family("vdw(0)"), Error);
}

TEST_CASE("duplicate maps are rejected even when written differently") {
    CHECK_THROWS_AS(monoq::parse_family("x; x + y; x + t"), Error);
    CHECK_THROWS_AS(monoq::parse_family("x*y^-1; x/y"), Error);
}

TEST_CASE("catalog entries") {
    CHECK(monoq::builtin_family("vdw(2)") == monoq::parse_family("x; x+y; x+2*y"));
    CHECK(monoq::builtin_family("bowen-sabok(1)") == monoq::parse_family("x; y; x*y; x+y"));
    CHECK(monoq::builtin_family("moreira(2,[t^2,t^3])").size() == 4);
    CHECK_THROWS_AS(monoq::builtin_family("moreira(2,[t^2])"), Error);
}

TEST_CASE("catalog serialization round trip") {
    for (const auto& key : monoq::catalog_samples()) {
        const Family f = monoq::builtin_family(key);
        CAPTURE(key);
        CHECK(monoq::parse_family(f.to_string()) == f);
        CHECK(monoq::resolve_family(key) == f);
    }
}

TEST_CASE("instantiation constraints") {
    const Family schur = monoq::builtin_family("schur");
    CHECK_THROWS_WITH_AS(monoq::instantiate(schur, Rational(1), Rational(0)), "invalid instantiation point", Error);
    CHECK(monoq::instantiate(schur, Rational(0), Rational(1)) == ints({0, 1, 1}));
    const Family q = monoq::builtin_family("thm1-quotient(1,[t])");
    CHECK_THROWS_WITH_AS(monoq::instantiate(q, Rational(0), Rational(1)), "invalid instantiation point", Error);
    FamilyOptions strict;
    strict.strict_nonzero_x = true;
    CHECK_THROWS_AS(monoq::instantiate(monoq::builtin_family("schur", strict), Rational(0), Rational(1)), Error);
}

TEST_CASE("scaled affine terms") {
    const Family f = monoq::parse_family("x; 2*x + (t^2)(3*y)");
    CHECK(monoq::instantiate(f, Rational(1), Rational(1)) == ints({1, 11}));
    CHECK(monoq::parse_family(f.to_string()) == f);
}

TEST_CASE("quotient and product families correspond under y -> 1/y") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-30, 30);
    const Family q = monoq::builtin_family("thm1-quotient(2,[t, t^2])");
    const Family p = monoq::builtin_family("thm1-product(2,[t, t^2])");
    for (int i = 0; i < 300; ++i) {
        long xn = 0;
        long yn = 0;
        while (xn == 0 || yn == 0) {
            xn = d(rng);
            yn = d(rng);
        }
        const Rational x = Rational::make(xn, 1 + (rng() % 7));
        const Rational y = Rational::make(yn, 1 + (rng() % 7));
        const auto vq = monoq::instantiate(q, x, y);
        const auto vp = monoq::instantiate(p, x, y.inverse());
        CHECK(vq[0] == vp[0]);
        CHECK(vq[1] == vp[1]);
        const auto vp_same = monoq::instantiate(p, x, y);
        CHECK(vq[2] == vp_same[2]);
        CHECK(vq[3] == vp_same[3]);
    }
}
