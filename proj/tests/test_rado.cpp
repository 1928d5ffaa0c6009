#include <doctest.h>

#include <random>

#include "monoq/rado.hpp"

using monoq::LinearSystem;
using monoq::Outcome;
using monoq::Rational;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
    std::vector<Rational> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

// Rank by fraction-free elimination on a copy.
std::size_t rank_of(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c].is_zero()) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i != rank && !m[i][c].is_zero()) {
                const Rational f = m[i][c] / m[rank][c];
                for (std::size_t k = 0; k < cols; ++k) {
                    m[i][k] -= f * m[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

// Brute force over labelled ordered partitions; vectors are columns.
bool oracle_columns(const LinearSystem& sys) {
    const std::size_t n = sys.cols();
    std::vector<std::size_t> label(n, 0);
    while (true) {
        std::size_t blocks = 0;
        for (auto l : label) {
            blocks = std::max(blocks, l + 1);
        }
        bool dense = true;
        for (std::size_t b = 0; b < blocks; ++b) {
            dense = dense && std::find(label.begin(), label.end(), b) != label.end();
        }
        bool ok = dense;
        std::vector<std::vector<Rational>> earlier;  // columns as rows
        for (std::size_t b = 0; ok && b < blocks; ++b) {
            std::vector<Rational> sum(sys.rows(), Rational(0));
            for (std::size_t j = 0; j < n; ++j) {
                if (label[j] == b) {
                    const auto col = sys.column(j);
                    for (std::size_t i = 0; i < sum.size(); ++i) {
                        sum[i] += col[i];
                    }
                }
            }
            if (b == 0) {
                ok = std::all_of(sum.begin(), sum.end(), [](const Rational& q) { return q.is_zero(); });
            } else {
                auto with = earlier;
                with.push_back(sum);
                ok = rank_of(earlier) == rank_of(with);
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (label[j] == b) {
                    earlier.push_back(sys.column(j));
                }
            }
        }
        if (ok) {
            return true;
        }
        std::size_t k = 0;
        while (k < n && ++label[k] == n) {
            label[k] = 0;
            ++k;
        }
        if (k == n) {
            return false;
        }
    }
}

}  // namespace

TEST_CASE("single equation examples") {
    const auto schur = monoq::columns_condition(LinearSystem::single(ints({1, 1, -1})));
    CHECK(schur.regular);
    REQUIRE(schur.partition.size() == 2);
    CHECK(schur.partition[0] == std::vector<std::size_t>{0, 2});
    CHECK_FALSE(monoq::columns_condition(LinearSystem::single(ints({1, 1, -3}))).regular);
    CHECK(monoq::columns_condition(LinearSystem::single(ints({2, -2}))).regular);
    CHECK(monoq::columns_condition(LinearSystem::single(ints({1, -2, 1}))).regular);
}

TEST_CASE("equation parsing") {
    const auto sys = LinearSystem::parse("x1 + x2 - x3 = 0");
    CHECK(sys.matrix()[0] == ints({1, 1, -1}));
    const auto moved = LinearSystem::parse("x1 + x2 = 3*x3");
    CHECK(moved.matrix()[0] == ints({1, 1, -3}));
    const auto two = LinearSystem::parse("x1 - x2 = 0; x2 + 2*x3 - x4 = 0");
    CHECK(two.rows() == 2);
    CHECK(two.cols() == 4);
    CHECK(LinearSystem::parse(two.to_string()).matrix() == two.matrix());
    CHECK_THROWS_AS(LinearSystem::parse("x1 + y = 0"), monoq::Error);
    CHECK_THROWS_AS(LinearSystem::parse("0 = 0"), monoq::Error);
}

TEST_CASE("general search agrees with the shortcut and the oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int i = 0; i < 400; ++i) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<Rational> coeffs;
        for (std::size_t j = 0; j < n; ++j) {
            coeffs.emplace_back(d(rng));
        }
        if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q.is_zero(); })) {
            continue;
        }
        const auto sys = LinearSystem::single(coeffs);
        const bool fast = monoq::single_equation_shortcut(coeffs).regular;
        CHECK(monoq::columns_condition_general(sys).regular == fast);
        if (n <= 5) {
            CHECK(oracle_columns(sys) == fast);
        }
    }
}

TEST_CASE("multi-row systems agree with the oracle") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-2, 2);
    for (int i = 0; i < 150; ++i) {
        const std::size_t n = 2 + rng() % 3;
        std::vector<std::vector<Rational>> rows(2, std::vector<Rational>(n));
        bool zero_row = false;
        for (auto& row : rows) {
            for (auto& q : row) {
                q = Rational(d(rng));
            }
            zero_row = zero_row || std::all_of(row.begin(), row.end(), [](const Rational& q) { return q.is_zero(); });
        }
        if (zero_row) {
            continue;
        }
        const LinearSystem sys(rows);
        const auto verdict = monoq::columns_condition(sys);
        CHECK(verdict.regular == oracle_columns(sys));
    }
}

TEST_CASE("verdict is invariant under column permutation and row scaling") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rational> coeffs;
        for (int j = 0; j < 5; ++j) {
            coeffs.emplace_back(d(rng));
        }
        if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q.is_zero(); })) {
            continue;
        }
        const bool base = monoq::columns_condition(LinearSystem::single(coeffs)).regular;
        auto perm = coeffs;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(monoq::columns_condition(LinearSystem::single(perm)).regular == base);
        auto scaled = coeffs;
        for (auto& q : scaled) {
            q *= Rational::make(-3, 7);
        }
        CHECK(monoq::columns_condition(LinearSystem::single(scaled)).regular == base);
    }
}

TEST_CASE("partition witness satisfies the columns condition") {
    const auto sys = LinearSystem::parse("x1 + x2 - x3 = 0; x1 - x4 + x5 = 0");
    const auto v = monoq::columns_condition(sys);
    REQUIRE(v.regular);
    std::vector<std::vector<Rational>> earlier;
    for (std::size_t b = 0; b < v.partition.size(); ++b) {
        std::vector<Rational> sum(sys.rows(), Rational(0));
        for (auto j : v.partition[b]) {
            const auto col = sys.column(j);
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum[i] += col[i];
            }
        }
        if (b == 0) {
            CHECK(std::all_of(sum.begin(), sum.end(), [](const Rational& q) { return q.is_zero(); }));
        } else {
            CHECK(monoq::in_span(earlier, sum));
        }
        for (auto j : v.partition[b]) {
            earlier.push_back(sys.column(j));
        }
    }
}

TEST_CASE("cross validation against search") {
    const auto schur = monoq::cross_validate(LinearSystem::single(ints({1, 1, -1})), 2, 8, {});
    CHECK(schur.verdict.regular);
    CHECK(schur.consistent);
    REQUIRE(schur.exhausted_at.has_value());
    CHECK(*schur.exhausted_at == 5);
    const auto eq = monoq::cross_validate(LinearSystem::single(ints({1, -1})), 2, 3, {});
    CHECK(eq.verdict.regular);
    REQUIRE(eq.exhausted_at.has_value());
    CHECK(*eq.exhausted_at == 1);
    CHECK_THROWS_AS(monoq::cross_validate(LinearSystem::single(ints({1, 1, 1, -1})), 2, 4, {}), monoq::Error);
}
