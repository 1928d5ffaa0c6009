#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace monoq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerification = 3;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Every knob of one invocation. JSON config keys use the long flag names.
struct RunConfig {
    std::string command;
    std::string family;
    std::string window;
    std::string windows;
    int colors = 2;
    std::uint64_t max_nodes = 0;
    double max_seconds = 0;
    unsigned workers = 1;
    unsigned split_depth = 4;
    bool no_symmetry = false;
    bool allow_offset = false;
    bool distinct = false;
    bool strict_x = false;
    std::uint64_t seed = kDefaultSeed;
    std::string output;
    std::string csv;
    std::string certificate;
    std::string certificate_dir;
    std::string cnf;
    std::string assignment;
    std::string coloring;
    bool random_coloring = false;
    std::string equation;
    std::string coefficients;
    std::int64_t max_n = 0;
    std::string op;
    std::string mode = "add";
    std::string set;
    std::string indices;
    std::string generators;
    std::string shape;
    std::string core;
    std::string t_shape;
    std::size_t max_f = 1;
    std::size_t ip_r = 2;
};

nlohmann::json config_to_json(const RunConfig& c);
/// Overwrites the fields named in `j`; unknown keys are an error.
void apply_config_json(RunConfig& c, const nlohmann::json& j);

/// Runs one command. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monoq::cli
