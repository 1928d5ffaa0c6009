#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "monoq");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int status = monoq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "monoq-cli-test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("search writes a certificate that verifies") {
    const auto cert = scratch("schur5.json").string();
    const auto r = invoke({"search", "--family", "schur", "--window", "int:1..5", "--colors", "2", "--certificate", cert});
    REQUIRE(r.status == 0);
    CHECK(parse(r.out)["result"]["outcome"] == "exhausted");
    CHECK(std::filesystem::exists(cert));
    CHECK(invoke({"verify", "--certificate", cert}).status == 0);
}

TEST_CASE("verify rejects a tampered coloring and prints the witness") {
    const auto cert = scratch("schur4.json").string();
    REQUIRE(invoke({"search", "-f", "schur", "-w", "int:1..4", "-r", "2", "--certificate", cert}).status == 0);
    std::ifstream in(cert);
    auto j = nlohmann::json::parse(in);
    j["coloring"] = {0, 0, 1, 0};
    const auto bad = scratch("schur4-bad.json").string();
    std::ofstream(bad) << j.dump();
    const auto r = invoke({"verify", "--certificate", bad});
    CHECK(r.status == monoq::cli::kExitVerification);
    CHECK(r.err.find("x=1 y=1") != std::string::npos);
    std::ofstream(scratch("garbage.json")) << "{not json";
    CHECK(invoke({"verify", "--certificate", scratch("garbage.json").string()}).status != 0);
}

TEST_CASE("sweep prints a CSV profile") {
    const auto r = invoke({"sweep", "--family", "x; x/y^1; x+t", "--windows", "farey:1..4", "--colors", "2"});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "N,window-size,outcome,nodes,seconds,certificate-path");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("config file values apply and flags win") {
    const auto cfg = scratch("cfg.json");
    std::ofstream(cfg) << R"({"family": "schur", "window": "int:1..4", "colors": 2})";
    const auto a = invoke({"search", "--config", cfg.string()});
    REQUIRE(a.status == 0);
    CHECK(parse(a.out)["result"]["outcome"] == "avoiding-coloring");
    const auto b = invoke({"search", "--config", cfg.string(), "--window", "int:1..5"});
    REQUIRE(b.status == 0);
    CHECK(parse(b.out)["result"]["outcome"] == "exhausted");
    CHECK(parse(b.out)["config"]["window"] == "int:1..5");
    std::ofstream(cfg) << R"({"famly": "schur"})";
    CHECK(invoke({"search", "--config", cfg.string()}).status == monoq::cli::kExitConfig);
}

TEST_CASE("identical runs give identical JSON") {
    const std::vector<std::string> args = {"search", "-f", "vdw(2)", "-w", "int:1..9", "-r", "2"};
    CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("configuration errors exit nonzero") {
    CHECK(invoke({"search", "-f", "nosuch(1)", "-w", "int:1..4"}).status == monoq::cli::kExitConfig);
    CHECK(invoke({"search", "-f", "schur", "-w", "bogus"}).status == monoq::cli::kExitConfig);
    CHECK(invoke({"frobnicate"}).status != 0);
}

TEST_CASE("other subcommands run") {
    CHECK(invoke({"catalog"}).status == 0);
    const auto rado = invoke({"rado", "--coefficients", "1,1,-3"});
    REQUIRE(rado.status == 0);
    CHECK(parse(rado.out)["regular"] == false);
    const auto fs = invoke({"largeset", "--op", "fs", "--generators", "1,2,4"});
    REQUIRE(fs.status == 0);
    CHECK(parse(fs.out)["size"] == 7);
    const auto thick = invoke({"largeset", "--op", "thick", "-w", "int:1..20", "--indices", "1,3,5", "--shape", "0,2"});
    REQUIRE(thick.status == 0);
    CHECK(parse(thick.out)["translate"] == "2");
    const auto loc = invoke({"localize", "--random-coloring", "-w", "mgrid:2,3:2", "-r", "3", "--t", "1,2", "--max-f", "4"});
    REQUIRE(loc.status == 0);
    const auto cnf = scratch("schur4.cnf").string();
    REQUIRE(invoke({"export-cnf", "-f", "schur", "-w", "int:1..4", "-r", "2", "--cnf", cnf}).status == 0);
    // Model of the avoiding coloring {1,4} / {2,3}.
    std::ofstream(scratch("model.txt")) << "s SATISFIABLE\nv 1 -2 -3 4 -5 6 7 -8 0\n";
    const auto imp = invoke({"import-sat", "-f", "schur", "-w", "int:1..4", "-r", "2", "--assignment",
                             scratch("model.txt").string()});
    CHECK(imp.status == 0);
    std::ofstream(scratch("bad-model.txt")) << "v 1 -2 3 -4 5 -6 7 -8 0\n";
    const auto bad = invoke({"import-sat", "-f", "schur", "-w", "int:1..4", "-r", "2", "--assignment",
                             scratch("bad-model.txt").string()});
    CHECK(bad.status == monoq::cli::kExitVerification);
    const auto det = invoke({"detect", "-f", "schur", "--coloring", "int:1..3 r=1 [0,0,0]"});
    REQUIRE(det.status == 0);
    CHECK(parse(det.out)["monochromatic"] == true);
}
