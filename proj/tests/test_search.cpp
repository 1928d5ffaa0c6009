#include <doctest.h>

#include "monoq/certificate.hpp"
#include "monoq/cnf.hpp"
#include "monoq/search.hpp"
#include "monoq/sweep.hpp"
#include "oracle.hpp"

using monoq::Outcome;
using monoq::Rational;
using monoq::SearchOptions;
using monoq::Window;

namespace {

monoq::SearchResult run(const std::string& fam, const std::string& w, int r, SearchOptions o = {}) {
    return monoq::search_avoiding(monoq::resolve_family(fam), Window::parse(w), r, o);
}

}  // namespace

TEST_CASE("classical anchors") {
    const auto s4 = run("schur", "int:1..4", 2);
    REQUIRE(s4.outcome == Outcome::kAvoiding);
    CHECK_FALSE(monoq::find_witness(monoq::builtin_family("schur"), *s4.coloring).has_value());
    CHECK(run("schur", "int:1..5", 2).outcome == Outcome::kExhausted);
    CHECK(run("vdw(2)", "int:1..8", 2).outcome == Outcome::kAvoiding);
    CHECK(run("vdw(2)", "int:1..9", 2).outcome == Outcome::kExhausted);
}

TEST_CASE("search agrees with brute force on small windows") {
    for (const auto& fam : oracle::catalog()) {
        for (const auto* spec :
             {"int:1..6", "farey:2", "farey:3", "farey:4", "farey:2:+neg", "mgrid:2:1", "mgrid:2,3:1"}) {
            const auto w = Window::parse(spec);
            CAPTURE(fam.key);
            CAPTURE(spec);
            for (int r : {1, 2}) {
                const auto res = run(fam.key, spec, r);
                CHECK((res.outcome == Outcome::kAvoiding) == oracle::brute_force_avoidable(fam, w.elements(), r));
            }
        }
    }
}

TEST_CASE("symmetry breaking does not change outcomes") {
    SearchOptions plain;
    plain.symmetry = false;
    for (int n = 1; n <= 9; ++n) {
        const auto spec = "int:1.." + std::to_string(n);
        CHECK(run("vdw(2)", spec, 2).outcome == run("vdw(2)", spec, 2, plain).outcome);
        CHECK(run("schur", spec, 2).outcome == run("schur", spec, 2, plain).outcome);
    }
}

TEST_CASE("node budget yields budget-exceeded") {
    SearchOptions o;
    o.budget.max_nodes = 3;
    const auto res = run("schur", "int:1..13", 3, o);
    CHECK(res.outcome == Outcome::kBudgetExceeded);
    CHECK_FALSE(monoq::make_certificate(res, {}).has_value());
}

TEST_CASE("worker count does not change node count or trace") {
    SearchOptions one;
    SearchOptions many;
    many.workers = 4;
    for (int n : {8, 9, 12}) {
        const auto spec = "int:1.." + std::to_string(n);
        const auto a = run("schur", spec, 3, one);
        const auto b = run("schur", spec, 3, many);
        CHECK(a.outcome == b.outcome);
        CHECK(a.nodes == b.nodes);
        CHECK(a.trace_hash == b.trace_hash);
        CHECK(monoq::result_to_json(a).dump() == monoq::result_to_json(b).dump());
    }
}

TEST_CASE("cnf encodes avoidance") {
    const auto fam = monoq::builtin_family("schur");
    for (int n : {4, 5}) {
        const auto w = Window::parse("int:1.." + std::to_string(n));
        const auto table = monoq::CandidateTable::build(fam, w);
        const auto cnf = monoq::export_cnf(table, 2);
        const auto model = oracle::dpll(cnf.variables(), cnf.clauses);
        CHECK(model.has_value() == (n == 4));
        if (model) {
            std::vector<int> lits;
            for (int v = 1; v <= cnf.variables(); ++v) {
                lits.push_back((*model)[static_cast<std::size_t>(v)] ? v : -v);
            }
            const auto c = monoq::import_assignment(cnf, w, lits);
            CHECK_FALSE(monoq::find_witness(table, c).has_value());
        }
        const auto text = monoq::to_dimacs(cnf, "schur");
        const auto back = monoq::parse_dimacs(text, cnf.elements, cnf.r);
        CHECK(back.clauses == cnf.clauses);
    }
}

TEST_CASE("cnf edge cases") {
    const auto w = Window::parse("int:1..3");
    const auto fam = monoq::parse_family("x; x + 5*y");
    const auto table = monoq::CandidateTable::build(fam, w);
    CHECK(table.size() == 0);
    const auto cnf = monoq::export_cnf(table, 2);
    CHECK(cnf.clauses.size() == 3);
    CHECK(oracle::dpll(cnf.variables(), cnf.clauses).has_value());
    // Two true colors on one element: the least one is taken.
    const auto c = monoq::import_assignment(cnf, w, {1, 2, -3, 4, 5, 6});
    CHECK(c.colors() == std::vector<monoq::Color>{0, 1, 0});
    CHECK_THROWS_AS(monoq::import_assignment(cnf, w, {-1, -2, -3, -4, -5, -6}), monoq::Error);
    CHECK(monoq::parse_assignment("s SATISFIABLE\nv 1 -2 3\nv -4 0\n") == std::vector<int>{1, -2, 3, -4});
}

TEST_CASE("certificates round trip and detect tampering") {
    const auto fam = monoq::builtin_family("schur");
    const auto lower = run("schur", "int:1..4", 2);
    auto cert = monoq::make_certificate(lower, fam.options());
    REQUIRE(cert.has_value());
    CHECK(monoq::verify_certificate(*cert).ok);
    auto bad = *cert;
    bad["coloring"] = {0, 0, 1, 0};
    const auto rep = monoq::verify_certificate(bad);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violation.has_value());
    CHECK(rep.violation->values == std::vector<Rational>{Rational(1), Rational(1), Rational(2)});

    const auto upper = run("schur", "int:1..5", 2);
    auto ucert = monoq::make_certificate(upper, fam.options());
    REQUIRE(ucert.has_value());
    CHECK(monoq::verify_certificate(*ucert).ok);
    auto forged = *ucert;
    forged["window"] = "int:1..4";
    CHECK_FALSE(monoq::verify_certificate(forged).ok);
    auto wrong_nodes = *ucert;
    wrong_nodes["exhaustion"]["nodes"] = 999;
    CHECK_FALSE(monoq::verify_certificate(wrong_nodes).ok);
    CHECK_FALSE(monoq::verify_certificate(nlohmann::json{{"kind", "lower-bound"}}).ok);
}

TEST_CASE("threshold sweeps") {
    const auto r2 = monoq::threshold_sweep(monoq::builtin_family("schur"), 2, monoq::WindowFamily::parse("int:1..6"),
                                           {}, false);
    REQUIRE(r2.minimal_exhausted.has_value());
    CHECK(*r2.minimal_exhausted == 5);
    CHECK(r2.rows.size() == 6);
    for (const auto& row : r2.rows) {
        REQUIRE(row.certificate.has_value());
        CHECK(monoq::verify_certificate(*row.certificate).ok);
    }
    const auto wf = monoq::WindowFamily::parse("farey:1..3:+neg");
    CHECK(wf.at(2).spec() == Window::parse("farey:2:+neg").spec());
    CHECK_THROWS_AS(monoq::WindowFamily::parse("int:5..2"), monoq::Error);
}
