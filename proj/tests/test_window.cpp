#include <doctest.h>

#include <numeric>
#include <set>

#include "monoq/coloring.hpp"
#include "monoq/window.hpp"

using monoq::Coloring;
using monoq::Error;
using monoq::Rational;
using monoq::Window;

namespace {

std::vector<std::string> strs(const Window& w) {
    std::vector<std::string> out;
    for (const auto& q : w.elements()) {
        out.push_back(q.to_string());
    }
    return out;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

}  // namespace

TEST_CASE("window enumeration") {
    CHECK(strs(Window::parse("int:1..5")) == std::vector<std::string>{"1", "2", "3", "4", "5"});
    const auto f2 = Window::parse("farey:2:+neg");
    CHECK(f2.size() == 7);
    const auto listed = strs(f2);
    CHECK(std::set<std::string>(listed.begin(), listed.end()) ==
          std::set<std::string>{"0", "1", "-1", "2", "-2", "1/2", "-1/2"});
    CHECK(strs(Window::parse("mgrid:2,3:1")) ==
          std::vector<std::string>{"1/6", "1/2", "3/2", "1/3", "1", "3", "2/3", "2", "6"});
}

TEST_CASE("window membership and indices") {
    const auto f3 = Window::parse("farey:3");
    CHECK(f3.contains(Rational::make(2, 3)));
    CHECK_FALSE(f3.contains(Rational::make(1, 4)));
    CHECK_FALSE(Window::parse("mgrid:2,3:2").contains(Rational(0)));
    const auto i5 = Window::parse("int:1..5");
    CHECK(i5.index_of(Rational(3)) == 2u);
    CHECK_FALSE(i5.index_of(Rational(7)).has_value());
    CHECK_FALSE(i5.index_of(Rational::make(3, 2)).has_value());
    // Order: 0, then denominator 1 with -1 before 1.
    CHECK(Window::parse("farey:1:+neg").index_of(Rational(-1)) == 1u);
}

TEST_CASE("indices invert enumeration") {
    for (const auto* spec : {"int:-3..9", "farey:7:+neg", "farey:5:-zero", "mgrid:2,5:2:+sign", "mgrid:3:4"}) {
        const auto w = Window::parse(spec);
        CAPTURE(spec);
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(w.index_of(w.at(i)) == i);
        }
        CHECK(Window::parse(w.spec()) == w);
        CHECK(Window::cardinality(w.shape()) == w.size());
    }
}

TEST_CASE("farey cardinality matches a direct count") {
    for (long n = 1; n <= 12; ++n) {
        std::size_t count = 1;  // zero
        for (long b = 1; b <= n; ++b) {
            for (long a = 1; a <= n; ++a) {
                count += gcd_l(a, b) == 1;
            }
        }
        CHECK(Window::parse("farey:" + std::to_string(n)).size() == count);
        CHECK(Window::parse("farey:" + std::to_string(n) + ":+neg").size() == 2 * count - 1);
    }
}

TEST_CASE("window validation") {
    CHECK_THROWS_AS(Window::parse("int:5..1"), Error);
    CHECK_THROWS_AS(Window::parse("farey:0"), Error);
    CHECK_THROWS_AS(Window::parse("mgrid:4:1"), Error);
    CHECK_THROWS_AS(Window::parse("mgrid:2,2:1"), Error);
    CHECK_THROWS_AS(Window::parse("nope:1"), Error);
    CHECK_THROWS_AS(Window::parse("int:1..100000000"), Error);
}

TEST_CASE("coloring enumeration counts") {
    const auto w2 = Window::parse("int:1..2");
    auto count = [](Window w, int r, bool sym) {
        monoq::ColoringStream s(std::move(w), r, sym);
        std::size_t n = 0;
        while (s.next()) {
            ++n;
        }
        return n;
    };
    CHECK(count(w2, 2, false) == 4);
    CHECK(count(w2, 2, true) == 2);
    CHECK(count(Window::parse("int:1..5"), 3, true) == 41);
    CHECK(monoq::count_colorings(5, 3, true) == 41);
    CHECK(monoq::count_colorings(5, 3, false) == 243);
}

TEST_CASE("symmetric enumeration hits every orbit once") {
    const auto w = Window::parse("int:1..6");
    std::set<std::vector<monoq::Color>> from_stream;
    monoq::ColoringStream s(w, 3, true);
    while (auto c = s.next()) {
        CHECK(c->canonical() == *c);
        from_stream.insert(c->colors());
    }
    std::set<std::vector<monoq::Color>> orbits;
    monoq::ColoringStream all(w, 3, false);
    while (auto c = all.next()) {
        orbits.insert(c->canonical().colors());
    }
    CHECK(from_stream == orbits);
}

TEST_CASE("color classes and text form") {
    const auto c = monoq::parse_coloring("int:1..4 r=2 [0,1,0,1]");
    const auto classes = monoq::color_classes(c);
    CHECK(classes.classes == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
    CHECK(monoq::parse_coloring(monoq::serialize_coloring(c)) == c);
    const Coloring constant(Window::parse("int:1..5"), 3, {1, 1, 1, 1, 1});
    const auto cc = monoq::color_classes(constant);
    CHECK(cc.classes[0].empty());
    CHECK(cc.classes[1].size() == 5);
    CHECK(cc.classes[2].empty());
    CHECK_THROWS_AS(monoq::parse_coloring("int:1..2 r=2 [0,2]"), Error);
    CHECK_THROWS_AS(monoq::parse_coloring("int:1..3 r=2 [0,1]"), Error);
    CHECK(c.color_of(Rational(4)) == 1);
    CHECK_FALSE(c.color_of(Rational(5)).has_value());
}
