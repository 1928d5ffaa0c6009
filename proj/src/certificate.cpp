#include "monoq/certificate.hpp"

#include <cstdio>

#include "monoq/detector.hpp"
#include "monoq/text.hpp"

namespace monoq {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used, 16);
        if (used != s.size()) {
            throw Error("bad hash");
        }
        return v;
    } catch (const std::exception&) {
        throw Error("malformed trace hash '" + s + "'");
    }
}

json colors_to_json(const Coloring& c) {
    json arr = json::array();
    for (auto v : c.colors()) {
        arr.push_back(static_cast<int>(v));
    }
    return arr;
}

}  // namespace

json options_to_json(const FamilyOptions& o) {
    return json{{"allow_offset", o.allow_offset},
                {"require_distinct", o.require_distinct},
                {"strict_nonzero_x", o.strict_nonzero_x}};
}

FamilyOptions options_from_json(const json& j) {
    FamilyOptions o;
    o.allow_offset = j.value("allow_offset", false);
    o.require_distinct = j.value("require_distinct", false);
    o.strict_nonzero_x = j.value("strict_nonzero_x", false);
    return o;
}

json result_to_json(const SearchResult& result) {
    json j;
    j["outcome"] = to_string(result.outcome);
    j["family"] = result.family;
    j["window"] = result.window;
    j["r"] = result.r;
    j["nodes"] = result.nodes;
    j["trace_hash"] = hex64(result.trace_hash);
    j["symmetry"] = result.options.symmetry;
    j["split_depth"] = result.options.split_depth;
    j["coloring"] = result.coloring ? colors_to_json(*result.coloring) : json(nullptr);
    return j;
}

std::optional<json> make_certificate(const SearchResult& result, const FamilyOptions& family_options) {
    if (result.outcome == Outcome::kBudgetExceeded) {
        return std::nullopt;
    }
    json cert;
    cert["format_version"] = kCertificateFormat;
    cert["tool"] = kToolVersion;
    cert["family"] = result.family;
    cert["family_options"] = options_to_json(family_options);
    cert["window"] = result.window;
    cert["r"] = result.r;
    if (result.outcome == Outcome::kAvoiding) {
        cert["kind"] = "lower-bound";
        cert["coloring"] = colors_to_json(*result.coloring);
    } else {
        cert["kind"] = "upper-bound";
        cert["exhaustion"] = json{{"nodes", result.nodes},
                                  {"trace_hash", hex64(result.trace_hash)},
                                  {"symmetry", result.options.symmetry},
                                  {"split_depth", result.options.split_depth}};
    }
    return cert;
}

std::string witness_to_string(const Witness& w) {
    return "x=" + w.x.to_string() + " y=" + w.y.to_string() + " color=" + std::to_string(w.color) + " values=[" +
           text::join(w.values, ", ", [](const Rational& q) { return q.to_string(); }) + "]";
}

VerificationReport verify_certificate(const json& cert) {
    VerificationReport report;
    try {
        if (cert.at("format_version").get<int>() != kCertificateFormat) {
            report.message = "unsupported certificate format version";
            return report;
        }
        const FamilyOptions fopts = options_from_json(cert.value("family_options", json::object()));
        const Family family = parse_family(cert.at("family").get<std::string>(), fopts);
        const Window window = Window::parse(cert.at("window").get<std::string>());
        const int r = cert.at("r").get<int>();
        const CandidateTable table = CandidateTable::build(family, window);
        const std::string kind = cert.at("kind").get<std::string>();

        if (kind == "lower-bound") {
            std::vector<Color> colors;
            for (const auto& v : cert.at("coloring")) {
                const int c = v.get<int>();
                if (c < 0 || c >= r) {
                    report.message = "color out of range: " + std::to_string(c);
                    return report;
                }
                colors.push_back(static_cast<Color>(c));
            }
            const Coloring coloring(window, r, std::move(colors));
            if (auto w = find_witness(table, coloring)) {
                report.message = "coloring has a monochromatic instance: " + witness_to_string(*w);
                report.violation = std::move(w);
                return report;
            }
            report.ok = true;
            report.message = "lower bound verified: no monochromatic instance among " +
                             std::to_string(table.size()) + " candidates";
            return report;
        }
        if (kind == "upper-bound") {
            const json& ex = cert.at("exhaustion");
            SearchOptions options;
            options.symmetry = ex.at("symmetry").get<bool>();
            options.split_depth = ex.at("split_depth").get<unsigned>();
            const auto recorded_nodes = ex.at("nodes").get<std::uint64_t>();
            const auto recorded_hash = parse_hex64(ex.at("trace_hash").get<std::string>());
            options.budget.max_nodes = recorded_nodes + 1;
            const SearchResult rerun = search_avoiding(table, r, options);
            if (rerun.outcome != Outcome::kExhausted) {
                report.message = "re-run did not exhaust: " + to_string(rerun.outcome);
                return report;
            }
            if (rerun.nodes != recorded_nodes || rerun.trace_hash != recorded_hash) {
                report.message = "re-run trace differs: nodes " + std::to_string(rerun.nodes) + " vs " +
                                 std::to_string(recorded_nodes);
                return report;
            }
            report.ok = true;
            report.message = "upper bound verified by re-run: " + std::to_string(rerun.nodes) + " nodes";
            return report;
        }
        report.message = "unknown certificate kind '" + kind + "'";
    } catch (const json::exception& e) {
        report.message = std::string("malformed certificate: ") + e.what();
    } catch (const Error& e) {
        report.message = std::string("malformed certificate: ") + e.what();
    }
    return report;
}

}  // namespace monoq
