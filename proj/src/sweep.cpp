#include "monoq/sweep.hpp"

#include "monoq/certificate.hpp"
#include "monoq/text.hpp"

#include <tuple>

namespace monoq {

namespace {

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view s) {
    const auto dots = s.find("..");
    if (dots == std::string_view::npos) {
        const auto v = text::parse_int(s);
        return {v, v};
    }
    return {text::parse_int(s.substr(0, dots)), text::parse_int(s.substr(dots + 2))};
}

}  // namespace

WindowFamily WindowFamily::parse(std::string_view spec) {
    const auto parts = text::split(text::trim(spec), ':');
    const auto kind = text::trim(parts[0]);
    WindowFamily wf;
    std::string rebuilt;
    if (kind == "int" && parts.size() == 2) {
        std::tie(wf.first, wf.last) = parse_range(parts[1]);
        wf.shape = IntegerInterval{1, 1};
    } else if (kind == "farey" && parts.size() >= 2) {
        std::tie(wf.first, wf.last) = parse_range(parts[1]);
        std::string probe = "farey:1";
        for (std::size_t i = 2; i < parts.size(); ++i) {
            probe += ":" + std::string(parts[i]);
        }
        wf.shape = Window::parse(probe).shape();
    } else if (kind == "mgrid" && (parts.size() == 3 || parts.size() == 4)) {
        std::tie(wf.first, wf.last) = parse_range(parts[2]);
        std::string probe = "mgrid:" + std::string(parts[1]) + ":0";
        if (parts.size() == 4) {
            probe += ":" + std::string(parts[3]);
        }
        wf.shape = Window::parse(probe).shape();
    } else {
        throw Error("window family must look like int:A..B, farey:A..B[:flags] or mgrid:p,...:A..B[:+sign]");
    }
    if (wf.first > wf.last || wf.first < 0) {
        throw Error("window family range must satisfy 0 <= first <= last");
    }
    return wf;
}

Window WindowFamily::at(std::int64_t n) const {
    Window::Shape s = shape;
    if (auto* w = std::get_if<IntegerInterval>(&s)) {
        w->lo = 1;
        w->hi = n;
    } else if (auto* f = std::get_if<FareyWindow>(&s)) {
        f->n = n;
    } else if (auto* g = std::get_if<MultiplicativeGrid>(&s)) {
        g->exponent_bound = n;
    }
    return Window(s);
}

ThresholdReport threshold_sweep(const Family& family, int r, const WindowFamily& windows,
                                const SearchOptions& options, bool stop_at_first_exhausted) {
    ThresholdReport report;
    report.family = family.to_string();
    report.r = r;
    for (auto n = windows.first; n <= windows.last; ++n) {
        const Window w = windows.at(n);
        SweepRow row;
        row.n = n;
        row.window = w.spec();
        row.window_size = w.size();
        row.result = search_avoiding(family, w, r, options);
        row.certificate = make_certificate(row.result, family.options());
        const bool exhausted = row.result.outcome == Outcome::kExhausted;
        report.rows.push_back(std::move(row));
        if (exhausted && !report.minimal_exhausted) {
            report.minimal_exhausted = n;
            if (stop_at_first_exhausted) {
                break;
            }
        }
    }
    return report;
}

}  // namespace monoq
