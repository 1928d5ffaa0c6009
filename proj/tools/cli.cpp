#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "monoq/certificate.hpp"
#include "monoq/cnf.hpp"
#include "monoq/detector.hpp"
#include "monoq/large_sets.hpp"
#include "monoq/localize.hpp"
#include "monoq/rado.hpp"
#include "monoq/search.hpp"
#include "monoq/sweep.hpp"
#include "monoq/text.hpp"

namespace monoq::cli {

using nlohmann::json;

namespace {

class VerificationFailure : public Error {
public:
    using Error::Error;
};

// Field table shared by the JSON config reader and writer.
template <typename Visitor>
void visit_fields(RunConfig& c, Visitor&& v) {
    v("command", c.command);
    v("family", c.family);
    v("window", c.window);
    v("windows", c.windows);
    v("colors", c.colors);
    v("max-nodes", c.max_nodes);
    v("max-seconds", c.max_seconds);
    v("workers", c.workers);
    v("split-depth", c.split_depth);
    v("no-symmetry", c.no_symmetry);
    v("allow-offset", c.allow_offset);
    v("distinct", c.distinct);
    v("strict-x", c.strict_x);
    v("seed", c.seed);
    v("output", c.output);
    v("csv", c.csv);
    v("certificate", c.certificate);
    v("certificate-dir", c.certificate_dir);
    v("cnf", c.cnf);
    v("assignment", c.assignment);
    v("coloring", c.coloring);
    v("random-coloring", c.random_coloring);
    v("equation", c.equation);
    v("coefficients", c.coefficients);
    v("max-n", c.max_n);
    v("op", c.op);
    v("mode", c.mode);
    v("set", c.set);
    v("indices", c.indices);
    v("generators", c.generators);
    v("shape", c.shape);
    v("core", c.core);
    v("t", c.t_shape);
    v("max-f", c.max_f);
    v("ip-r", c.ip_r);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path);
    }
    out << body;
}

std::string inline_or_file(const std::string& value) {
    return !value.empty() && value.front() == '@' ? read_file(value.substr(1)) : value;
}

std::vector<Rational> parse_rationals(const std::string& list) {
    std::vector<Rational> out;
    for (auto part : text::split(list, ',')) {
        if (!text::trim(part).empty()) {
            out.push_back(Rational::parse(text::trim(part)));
        }
    }
    return out;
}

json rationals_json(const std::vector<Rational>& qs) {
    json arr = json::array();
    for (const auto& q : qs) {
        arr.push_back(q.to_string());
    }
    return arr;
}

json witness_json(const Witness& w) {
    return {{"x", w.x.to_string()}, {"y", w.y.to_string()}, {"color", w.color}, {"values", rationals_json(w.values)}};
}

FamilyOptions family_options(const RunConfig& c) {
    FamilyOptions o;
    o.allow_offset = c.allow_offset;
    o.require_distinct = c.distinct;
    o.strict_nonzero_x = c.strict_x;
    return o;
}

SearchOptions search_options(const RunConfig& c) {
    SearchOptions o;
    o.symmetry = !c.no_symmetry;
    o.split_depth = c.split_depth;
    o.workers = c.workers;
    o.budget.max_nodes = c.max_nodes;
    o.budget.max_seconds = c.max_seconds;
    return o;
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(what);
    }
}

Family family_of(const RunConfig& c) {
    require(!c.family.empty(), "--family is required");
    return resolve_family(c.family, family_options(c));
}

Window window_of(const RunConfig& c) {
    require(!c.window.empty(), "--window is required");
    return Window::parse(c.window);
}

void check_colors(const RunConfig& c) {
    require(c.colors >= 1 && c.colors <= kMaxColors, "--colors must be between 1 and 32");
}

class Emitter {
public:
    Emitter(const RunConfig& c, std::ostream& out) : config_(c), out_(out) {}

    void json_result(json body) {
        body["config"] = config_to_json(config_);
        body["tool"] = kToolVersion;
        const std::string text = body.dump(2) + "\n";
        if (!config_.output.empty()) {
            write_file(config_.output, text);
        }
        if (!quiet_) {
            out_ << text;
        }
    }

    void quiet() { quiet_ = true; }

private:
    const RunConfig& config_;
    std::ostream& out_;
    bool quiet_ = false;
};

void cmd_catalog(const RunConfig& c, Emitter& emit) {
    json rows = json::array();
    for (const auto& key : catalog_samples()) {
        rows.push_back({{"key", key}, {"family", builtin_family(key, family_options(c)).to_string()}});
    }
    json names = catalog_names();
    emit.json_result({{"command", "catalog"}, {"names", names}, {"samples", rows}});
}

void cmd_detect(const RunConfig& c, Emitter& emit) {
    const Family family = family_of(c);
    require(!c.coloring.empty(), "--coloring is required");
    const Coloring col = parse_coloring(text::trim(inline_or_file(c.coloring)));
    const auto w = find_witness(family, col);
    emit.json_result({{"command", "detect"},
                      {"family", family.to_string()},
                      {"window", col.window().spec()},
                      {"monochromatic", w.has_value()},
                      {"witness", w ? witness_json(*w) : json(nullptr)}});
}

void cmd_search(const RunConfig& c, Emitter& emit) {
    check_colors(c);
    const Family family = family_of(c);
    const Window window = window_of(c);
    const auto result = search_avoiding(family, window, c.colors, search_options(c));
    const auto cert = make_certificate(result, family.options());
    if (cert && !c.certificate.empty()) {
        write_file(c.certificate, cert->dump(2) + "\n");
    }
    json body = {{"command", "search"}, {"result", result_to_json(result)}};
    body["certificate"] = cert ? *cert : json(nullptr);
    emit.json_result(std::move(body));
}

void cmd_sweep(const RunConfig& c, Emitter& emit, std::ostream& out) {
    check_colors(c);
    const Family family = family_of(c);
    require(!c.windows.empty(), "--windows is required");
    const auto wf = WindowFamily::parse(c.windows);
    const auto report = threshold_sweep(family, c.colors, wf, search_options(c), false);

    std::ostringstream csv;
    csv << "N,window-size,outcome,nodes,seconds,certificate-path\n";
    json rows = json::array();
    for (const auto& row : report.rows) {
        std::string path;
        if (row.certificate && !c.certificate_dir.empty()) {
            path = (std::filesystem::path(c.certificate_dir) / ("N" + std::to_string(row.n) + ".json")).string();
            write_file(path, row.certificate->dump(2) + "\n");
        }
        csv << row.n << ',' << row.window_size << ',' << to_string(row.result.outcome) << ',' << row.result.nodes
            << ',' << std::fixed << std::setprecision(6) << row.result.seconds << ',' << path << '\n';
        rows.push_back({{"n", row.n},
                        {"window", row.window},
                        {"window_size", row.window_size},
                        {"result", result_to_json(row.result)},
                        {"certificate", row.certificate ? *row.certificate : json(nullptr)}});
    }
    if (!c.csv.empty()) {
        write_file(c.csv, csv.str());
    } else {
        out << csv.str();
        emit.quiet();
    }
    json body = {{"command", "sweep"}, {"family", report.family}, {"r", report.r}, {"rows", rows}};
    body["minimal_exhausted"] = report.minimal_exhausted ? json(*report.minimal_exhausted) : json(nullptr);
    emit.json_result(std::move(body));
}

void cmd_rado(const RunConfig& c, Emitter& emit) {
    require(!c.equation.empty() || !c.coefficients.empty(), "--equation or --coefficients is required");
    const LinearSystem sys =
        c.equation.empty() ? LinearSystem::single(parse_rationals(c.coefficients)) : LinearSystem::parse(c.equation);
    const auto verdict = columns_condition(sys);
    json partition = verdict.partition;
    json body = {{"command", "rado"},
                 {"system", sys.to_string()},
                 {"regular", verdict.regular},
                 {"partition", partition},
                 {"note", verdict.note}};
    if (c.max_n > 0) {
        check_colors(c);
        const auto rep = cross_validate(sys, c.colors, c.max_n, search_options(c));
        json rows = json::array();
        for (const auto& row : rep.rows) {
            rows.push_back({{"n", row.n}, {"r", row.r}, {"outcome", to_string(row.outcome)}, {"nodes", row.nodes}});
        }
        body["cross_validation"] = {{"family", rep.family},
                                    {"rows", rows},
                                    {"consistent", rep.consistent},
                                    {"summary", rep.summary},
                                    {"exhausted_at", rep.exhausted_at ? json(*rep.exhausted_at) : json(nullptr)},
                                    {"avoiding_r", rep.avoiding_r ? json(*rep.avoiding_r) : json(nullptr)}};
    }
    emit.json_result(std::move(body));
}

ElementSet element_set(const RunConfig& c, const Window& w) {
    ElementSet a;
    for (const auto& q : parse_rationals(c.set)) {
        require(w.contains(q), "set element " + q.to_string() + " is outside the window");
        a.insert(q);
    }
    for (auto part : text::split(c.indices, ',')) {
        if (text::trim(part).empty()) {
            continue;
        }
        const auto i = text::parse_int(text::trim(part));
        require(i >= 0 && static_cast<std::size_t>(i) < w.size(), "window index out of range");
        a.insert(w.at(static_cast<std::size_t>(i)));
    }
    return a;
}

json element_set_json(const ElementSet& s) { return rationals_json({s.begin(), s.end()}); }

void cmd_largeset(const RunConfig& c, Emitter& emit) {
    const GroupMode mode = group_mode_from_string(c.mode);
    json body = {{"command", "largeset"}, {"op", c.op}, {"mode", to_string(mode)}};
    if (c.op == "fs") {
        const auto sums = finite_sums({parse_rationals(c.generators), mode});
        body["sums"] = element_set_json(sums);
        body["size"] = sums.size();
        emit.json_result(std::move(body));
        return;
    }
    const Window w = window_of(c);
    const ElementSet a = element_set(c, w);
    IpSearchOptions ip;
    ip.seed = c.seed;
    if (c.op == "thick") {
        const auto x = is_thick_for(a, w, ShapeF(parse_rationals(c.shape), mode));
        body["thick"] = x.has_value();
        body["translate"] = x ? json(x->to_string()) : json(nullptr);
    } else if (c.op == "syndetic") {
        std::vector<Rational> core;
        if (c.core.find(':') != std::string::npos) {
            core = Window::parse(c.core).elements();
        } else {
            core = parse_rationals(c.core);
        }
        require(!core.empty(), "--core is required");
        const auto res = is_syndetic_for(a, w, ShapeF(parse_rationals(c.shape), mode), core);
        body["covered"] = res.covered;
        body["uncovered"] = rationals_json(res.uncovered);
    } else if (c.op == "ps") {
        const auto res = piecewise_syndetic_witness(a, w, c.max_f, ShapeF(parse_rationals(c.t_shape), mode));
        body["found"] = res.has_value();
        body["shape"] = res ? rationals_json(res->shape.elements()) : json(nullptr);
        body["translate"] = res ? json(res->translate.to_string()) : json(nullptr);
    } else if (c.op == "ip") {
        const auto res = find_ip_r(a, c.ip_r, mode, ip);
        body["generators"] = res.generators ? rationals_json(*res.generators) : json(nullptr);
        body["exhaustive"] = res.exhaustive;
    } else if (c.op == "ipstar") {
        const auto res = is_ip_r_star(a, w, c.ip_r, mode, ip);
        body["holds"] = res.holds;
        body["exhaustive"] = res.exhaustive;
        body["avoiding_generators"] =
            res.avoiding_generators ? rationals_json(*res.avoiding_generators) : json(nullptr);
    } else {
        throw Error("--op must be one of fs, thick, syndetic, ps, ip, ipstar");
    }
    emit.json_result(std::move(body));
}

Coloring random_coloring(const Window& w, int r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, r - 1);
    std::vector<Color> colors(w.size());
    for (auto& x : colors) {
        x = static_cast<Color>(pick(rng));
    }
    return Coloring(w, r, std::move(colors));
}

void cmd_localize(const RunConfig& c, Emitter& emit) {
    std::optional<Coloring> col;
    if (c.random_coloring) {
        check_colors(c);
        col = random_coloring(window_of(c), c.colors, c.seed);
    } else {
        require(!c.coloring.empty(), "--coloring or --random-coloring is required");
        col = parse_coloring(text::trim(inline_or_file(c.coloring)));
    }
    const ShapeF t(parse_rationals(c.t_shape), GroupMode::kMul);
    const auto rep = localize_colors(*col, t, c.max_f);
    json body = {{"command", "localize"}, {"coloring", serialize_coloring(*col)}, {"found", rep.has_value()}};
    if (rep) {
        json sets = json::array();
        for (std::size_t l = 0; l < rep->color_sets.size(); ++l) {
            sets.push_back({{"colors", rep->color_sets[l]}, {"thickness_witness", rep->thickness_witnesses[l].to_string()}});
        }
        body["report"] = {{"color_sets", sets},
                          {"shape", rationals_json(rep->shape)},
                          {"core", rationals_json(rep->core)},
                          {"coverage", rep->coverage},
                          {"verified", verify_localization(*rep, *col, t, c.max_f).empty()}};
    } else {
        body["report"] = nullptr;
    }
    emit.json_result(std::move(body));
}

void cmd_export_cnf(const RunConfig& c, Emitter& emit, std::ostream& out) {
    check_colors(c);
    const Family family = family_of(c);
    const Window window = window_of(c);
    const auto table = CandidateTable::build(family, window);
    const auto cnf = export_cnf(table, c.colors);
    const std::string dimacs = to_dimacs(cnf, "family " + family.to_string() + " window " + window.spec() + " r=" +
                                                  std::to_string(c.colors));
    if (c.cnf.empty()) {
        out << dimacs;
        return;
    }
    write_file(c.cnf, dimacs);
    emit.json_result({{"command", "export-cnf"},
                      {"variables", cnf.variables()},
                      {"clauses", cnf.clauses.size()},
                      {"path", c.cnf}});
}

void cmd_import_sat(const RunConfig& c, Emitter& emit) {
    check_colors(c);
    const Family family = family_of(c);
    const Window window = window_of(c);
    require(!c.assignment.empty(), "--assignment is required");
    const auto table = CandidateTable::build(family, window);
    const auto cnf = export_cnf(table, c.colors);
    const auto col = import_assignment(cnf, window, parse_assignment(read_file(c.assignment)));
    const auto w = find_witness(table, col);
    emit.json_result({{"command", "import-sat"},
                      {"coloring", serialize_coloring(col)},
                      {"avoiding", !w.has_value()},
                      {"witness", w ? witness_json(*w) : json(nullptr)}});
    if (w) {
        throw VerificationFailure("imported coloring has a monochromatic instance: " + witness_to_string(*w));
    }
}

void cmd_verify(const RunConfig& c, Emitter& emit) {
    require(!c.certificate.empty(), "--certificate is required");
    json cert;
    try {
        cert = json::parse(read_file(c.certificate));
    } catch (const json::exception& e) {
        throw Error(std::string("malformed certificate: ") + e.what());
    }
    const auto rep = verify_certificate(cert);
    emit.json_result({{"command", "verify"},
                      {"ok", rep.ok},
                      {"message", rep.message},
                      {"violation", rep.violation ? witness_json(*rep.violation) : json(nullptr)}});
    if (!rep.ok) {
        throw VerificationFailure(rep.violation ? "first violating witness: " + witness_to_string(*rep.violation)
                                                : rep.message);
    }
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--output,-o", c.output, "Write the JSON result to this path");
}

void add_family(CLI::App* sub, RunConfig& c) {
    sub->add_option("--family,-f", c.family, "Catalog key or DSL text");
    sub->add_flag("--allow-offset", c.allow_offset, "Permit x + c terms with nonzero constant c");
    sub->add_flag("--distinct", c.distinct, "Require pairwise distinct term values");
    sub->add_flag("--strict-x", c.strict_x, "Require x != 0 for every family");
}

void add_search(CLI::App* sub, RunConfig& c) {
    sub->add_option("--colors,-r", c.colors, "Number of colors");
    sub->add_option("--max-nodes", c.max_nodes, "Decision budget (0 = unlimited)");
    sub->add_option("--max-seconds", c.max_seconds, "Wall-clock budget (0 = unlimited)");
    sub->add_option("--workers,-j", c.workers, "Worker threads");
    sub->add_option("--split-depth", c.split_depth, "Depth at which the search tree is split into subtrees");
    sub->add_flag("--no-symmetry", c.no_symmetry, "Disable color symmetry breaking");
}

// Values from --config are loaded before flag parsing so explicit flags win.
std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (text::starts_with(args[i], "--config=")) {
            return args[i].substr(9);
        }
    }
    return std::nullopt;
}

}  // namespace

json config_to_json(const RunConfig& c) {
    json j = json::object();
    RunConfig copy = c;
    visit_fields(copy, [&](const char* key, auto& field) { j[key] = field; });
    return j;
}

void apply_config_json(RunConfig& c, const json& j) {
    if (!j.is_object()) {
        throw Error("config file must hold a JSON object");
    }
    std::vector<std::string> known;
    visit_fields(c, [&](const char* key, auto& field) {
        known.emplace_back(key);
        if (j.contains(key)) {
            try {
                j.at(key).get_to(field);
            } catch (const json::exception&) {
                throw Error(std::string("config key '") + key + "' has the wrong type");
            }
        }
    });
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error("unknown config key '" + key + "'");
        }
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (auto path = find_config_path(args)) {
            apply_config_json(c, json::parse(read_file(*path)));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    CLI::App app{"Search, detect and certify monochromatic patterns in colorings of finite rational windows", "monoq"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON file whose keys mirror the long flag names");

    auto* catalog = app.add_subcommand("catalog", "List built-in families");
    add_common(catalog, c);
    add_family(catalog, c);

    auto* detect = app.add_subcommand("detect", "Find a monochromatic instance under a given coloring");
    add_common(detect, c);
    add_family(detect, c);
    detect->add_option("--coloring", c.coloring, "'<window> r=<r> [c0,...]' or @file");

    auto* search = app.add_subcommand("search", "Search for an avoiding coloring or exhaust the window");
    add_common(search, c);
    add_family(search, c);
    add_search(search, c);
    search->add_option("--window,-w", c.window, "Window spec");
    search->add_option("--certificate", c.certificate, "Write the certificate to this path");

    auto* sweep = app.add_subcommand("sweep", "Search a family over a growing sequence of windows");
    add_common(sweep, c);
    add_family(sweep, c);
    add_search(sweep, c);
    sweep->add_option("--windows", c.windows, "Window family, e.g. farey:1..8");
    sweep->add_option("--csv", c.csv, "Write the CSV table here instead of stdout");
    sweep->add_option("--certificate-dir", c.certificate_dir, "Directory for per-N certificates");

    auto* rado = app.add_subcommand("rado", "Columns condition for a homogeneous linear system");
    add_common(rado, c);
    add_search(rado, c);
    rado->add_option("--equation", c.equation, "e.g. 'x1 + x2 - x3 = 0'");
    rado->add_option("--coefficients", c.coefficients, "Comma-separated coefficients of one equation");
    rado->add_option("--max-n", c.max_n, "Cross-validate against searches on int:1..N, N up to this bound");

    auto* largeset = app.add_subcommand("largeset", "Finite-window large-set checks");
    add_common(largeset, c);
    largeset->add_option("--op", c.op, "fs, thick, syndetic, ps, ip or ipstar")->required();
    largeset->add_option("--mode", c.mode, "add or mul");
    largeset->add_option("--window,-w", c.window, "Window spec");
    largeset->add_option("--set", c.set, "Comma-separated elements of A");
    largeset->add_option("--indices", c.indices, "Comma-separated window indices of A");
    largeset->add_option("--generators", c.generators, "Generators for fs");
    largeset->add_option("--shape", c.shape, "Shape F");
    largeset->add_option("--core", c.core, "Core elements or a window spec");
    largeset->add_option("--t", c.t_shape, "Shape T for ps");
    largeset->add_option("--max-f", c.max_f, "Largest |F| for ps");
    largeset->add_option("--ip-r", c.ip_r, "r for ip and ipstar");
    largeset->add_option("--seed", c.seed, "Seed for randomized IP_r search");

    auto* localize = app.add_subcommand("localize", "Localize the color classes of an mgrid coloring");
    add_common(localize, c);
    localize->add_option("--coloring", c.coloring, "'<mgrid window> r=<r> [c0,...]' or @file");
    localize->add_flag("--random-coloring", c.random_coloring, "Use a seeded random coloring of --window");
    localize->add_option("--window,-w", c.window, "Window for --random-coloring");
    localize->add_option("--colors,-r", c.colors, "Colors for --random-coloring");
    localize->add_option("--seed", c.seed, "Seed for --random-coloring");
    localize->add_option("--t", c.t_shape, "Shape T (multiplicative)");
    localize->add_option("--max-f", c.max_f, "Largest |F|");

    auto* export_cnf_cmd = app.add_subcommand("export-cnf", "Write the avoidance problem as DIMACS CNF");
    add_common(export_cnf_cmd, c);
    add_family(export_cnf_cmd, c);
    export_cnf_cmd->add_option("--window,-w", c.window, "Window spec");
    export_cnf_cmd->add_option("--colors,-r", c.colors, "Number of colors");
    export_cnf_cmd->add_option("--cnf", c.cnf, "Output path (stdout if omitted)");

    auto* import_sat = app.add_subcommand("import-sat", "Turn a SAT solver model into a coloring and check it");
    add_common(import_sat, c);
    add_family(import_sat, c);
    import_sat->add_option("--window,-w", c.window, "Window spec");
    import_sat->add_option("--colors,-r", c.colors, "Number of colors");
    import_sat->add_option("--assignment", c.assignment, "Solver output file");

    auto* verify = app.add_subcommand("verify", "Re-check a certificate");
    add_common(verify, c);
    verify->add_option("--certificate", c.certificate, "Certificate path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    c.command = app.get_subcommands().front()->get_name();

    Emitter emit(c, out);
    try {
        if (c.command == "catalog") {
            cmd_catalog(c, emit);
        } else if (c.command == "detect") {
            cmd_detect(c, emit);
        } else if (c.command == "search") {
            cmd_search(c, emit);
        } else if (c.command == "sweep") {
            cmd_sweep(c, emit, out);
        } else if (c.command == "rado") {
            cmd_rado(c, emit);
        } else if (c.command == "largeset") {
            cmd_largeset(c, emit);
        } else if (c.command == "localize") {
            cmd_localize(c, emit);
        } else if (c.command == "export-cnf") {
            cmd_export_cnf(c, emit, out);
        } else if (c.command == "import-sat") {
            cmd_import_sat(c, emit);
        } else if (c.command == "verify") {
            cmd_verify(c, emit);
        }
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}

}  // namespace monoq::cli
