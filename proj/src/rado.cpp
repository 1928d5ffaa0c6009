#include "monoq/rado.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <regex>
#include <unordered_set>

#include "monoq/text.hpp"

namespace monoq {

LinearSystem::LinearSystem(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
    if (rows_.empty() || rows_.front().empty()) {
        throw Error("linear system must be nonempty");
    }
    cols_ = rows_.front().size();
    for (const auto& row : rows_) {
        if (row.size() != cols_) {
            throw Error("linear system rows must have equal length");
        }
        if (std::all_of(row.begin(), row.end(), [](const Rational& q) { return q.is_zero(); })) {
            throw Error("linear system has an all-zero row");
        }
    }
}

LinearSystem LinearSystem::single(std::vector<Rational> coefficients) {
    return LinearSystem(std::vector<std::vector<Rational>>{std::move(coefficients)});
}

std::vector<Rational> LinearSystem::column(std::size_t j) const {
    std::vector<Rational> col;
    col.reserve(rows_.size());
    for (const auto& row : rows_) {
        col.push_back(row[j]);
    }
    return col;
}

std::string LinearSystem::to_string() const {
    return text::join(rows_, "; ", [](const std::vector<Rational>& row) {
        std::string out;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) {
                continue;
            }
            const bool neg = row[j].sign() < 0;
            const Rational mag = neg ? -row[j] : row[j];
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (mag != Rational(1)) {
                out += mag.to_string() + "*";
            }
            out += "x" + std::to_string(j + 1);
        }
        return out + " = 0";
    });
}

namespace {

// Linear form as variable index (1-based) -> coefficient.
std::map<std::size_t, Rational> parse_linear(std::string_view side, std::string_view whole) {
    std::string s;
    for (char ch : side) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    std::map<std::size_t, Rational> form;
    if (s == "0") {
        return form;
    }
    static const std::regex term(R"(([+-]?)(?:(\d+(?:/\d+)?)\*?)?x(\d+))");
    auto it = std::sregex_iterator(s.begin(), s.end(), term);
    std::size_t consumed = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (static_cast<std::size_t>(m.position()) != consumed || (consumed != 0 && m[1].length() == 0)) {
            throw Error("equation syntax error at position " + std::to_string(consumed) + " in '" +
                        std::string(whole) + "'");
        }
        consumed += static_cast<std::size_t>(m.length());
        Rational c = m[2].matched ? Rational::parse(m[2].str()) : Rational(1);
        if (m[1].str() == "-") {
            c = -c;
        }
        const auto var = static_cast<std::size_t>(text::parse_int(m[3].str()));
        if (var == 0) {
            throw Error("variables are numbered from x1");
        }
        form[var] += c;
    }
    if (consumed != s.size() || s.empty()) {
        throw Error("equation syntax error at position " + std::to_string(consumed) + " in '" + std::string(whole) +
                    "'");
    }
    return form;
}

}  // namespace

LinearSystem LinearSystem::parse(std::string_view text) {
    std::vector<std::map<std::size_t, Rational>> forms;
    std::size_t cols = 0;
    for (auto eq : text::split(text, ';')) {
        if (text::trim(eq).empty()) {
            continue;
        }
        const auto parts = text::split(eq, '=');
        if (parts.size() != 2) {
            throw Error("equation must contain exactly one '=': '" + std::string(eq) + "'");
        }
        auto lhs = parse_linear(parts[0], eq);
        for (const auto& [var, c] : parse_linear(parts[1], eq)) {
            lhs[var] -= c;
        }
        for (const auto& [var, c] : lhs) {
            cols = std::max(cols, var);
        }
        forms.push_back(std::move(lhs));
    }
    if (forms.empty()) {
        throw Error("no equation given");
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& form : forms) {
        std::vector<Rational> row(cols);
        for (const auto& [var, c] : form) {
            row[var - 1] = c;
        }
        rows.push_back(std::move(row));
    }
    return LinearSystem(std::move(rows));
}

bool in_span(const std::vector<std::vector<Rational>>& vectors, const std::vector<Rational>& target) {
    // Row-reduce the vectors, then reduce the target against the pivots.
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> pivots;
    auto reduce = [&](std::vector<Rational> v) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational f = v[pivots[b]];
            if (!f.is_zero()) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= f * basis[b][i];
                }
            }
        }
        return v;
    };
    for (const auto& vec : vectors) {
        auto v = reduce(vec);
        const auto pivot = std::find_if(v.begin(), v.end(), [](const Rational& q) { return !q.is_zero(); });
        if (pivot == v.end()) {
            continue;
        }
        const Rational inv = pivot->inverse();
        for (auto& q : v) {
            q *= inv;
        }
        const auto p = static_cast<std::size_t>(pivot - v.begin());
        // Keep earlier basis vectors reduced at the new pivot.
        for (auto& b : basis) {
            const Rational f = b[p];
            if (!f.is_zero()) {
                for (std::size_t i = 0; i < b.size(); ++i) {
                    b[i] -= f * v[i];
                }
            }
        }
        basis.push_back(std::move(v));
        pivots.push_back(p);
    }
    const auto rest = reduce(target);
    return std::all_of(rest.begin(), rest.end(), [](const Rational& q) { return q.is_zero(); });
}

namespace {

std::vector<std::size_t> mask_members(std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask; ++i, mask >>= 1) {
        if (mask & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

class PartitionSearch {
public:
    explicit PartitionSearch(const LinearSystem& sys) : sys_(sys), full_((1u << sys.cols()) - 1) {
        for (std::size_t j = 0; j < sys.cols(); ++j) {
            columns_.push_back(sys.column(j));
        }
    }

    bool run(std::uint32_t used) {
        if (used == full_) {
            return true;
        }
        if (failed_.count(used)) {
            return false;
        }
        std::vector<std::vector<Rational>> span;
        for (auto j : mask_members(used)) {
            span.push_back(columns_[j]);
        }
        const std::uint32_t remaining = full_ & ~used;
        // Ascending enumeration of nonempty submasks of `remaining`.
        for (std::uint32_t b = (remaining & (0u - remaining)); b != 0; b = ((b | ~remaining) + 1) & remaining) {
            std::vector<Rational> sum(sys_.rows());
            for (auto j : mask_members(b)) {
                for (std::size_t i = 0; i < sum.size(); ++i) {
                    sum[i] += columns_[j][i];
                }
            }
            const bool ok = used == 0
                                ? std::all_of(sum.begin(), sum.end(), [](const Rational& q) { return q.is_zero(); })
                                : in_span(span, sum);
            if (!ok) {
                continue;
            }
            blocks_.push_back(mask_members(b));
            if (run(used | b)) {
                return true;
            }
            blocks_.pop_back();
        }
        failed_.insert(used);
        return false;
    }

    std::vector<std::vector<std::size_t>> blocks_;

private:
    const LinearSystem& sys_;
    std::uint32_t full_;
    std::vector<std::vector<Rational>> columns_;
    std::unordered_set<std::uint32_t> failed_;
};

}  // namespace

RadoVerdict columns_condition_general(const LinearSystem& sys) {
    if (sys.cols() > 14) {
        throw Error("columns condition search supports at most 14 columns");
    }
    PartitionSearch search(sys);
    RadoVerdict v;
    v.regular = search.run(0);
    if (v.regular) {
        v.partition = search.blocks_;
        v.note = "ordered column partition found";
    } else {
        v.note = "every ordered column partition fails";
    }
    return v;
}

RadoVerdict single_equation_shortcut(const std::vector<Rational>& coefficients) {
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (!coefficients[j].is_zero()) {
            nonzero.push_back(j);
        }
    }
    if (nonzero.size() > 20) {
        throw Error("subset-sum shortcut supports at most 20 nonzero coefficients");
    }
    // Clear denominators, then walk all subsets in Gray-code order.
    mpz_class lcm = 1;
    for (auto j : nonzero) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coefficients[j].denominator().get_mpz_t());
    }
    std::vector<mpz_class> ints;
    for (auto j : nonzero) {
        ints.push_back(coefficients[j].numerator() * (lcm / coefficients[j].denominator()));
    }
    RadoVerdict v;
    const std::uint32_t total = 1u << nonzero.size();
    mpz_class sum = 0;
    std::uint32_t gray = 0;
    std::uint32_t best = 0;
    for (std::uint32_t step = 1; step < total; ++step) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(step));
        gray ^= 1u << bit;
        if (gray & (1u << bit)) {
            sum += ints[bit];
        } else {
            sum -= ints[bit];
        }
        // Prefer the numerically smallest zero-sum mask for a stable answer.
        if (sum == 0 && (best == 0 || gray < best)) {
            best = gray;
        }
    }
    if (best == 0) {
        v.note = "no nonempty set of nonzero coefficients sums to zero";
        return v;
    }
    v.regular = true;
    std::vector<std::size_t> first;
    std::vector<std::size_t> rest;
    std::vector<bool> in_first(coefficients.size(), false);
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        if (best & (1u << i)) {
            in_first[nonzero[i]] = true;
        }
    }
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        (in_first[j] ? first : rest).push_back(j);
    }
    v.partition.push_back(first);
    if (!rest.empty()) {
        v.partition.push_back(rest);
    }
    v.note = "zero-sum coefficient subset found";
    return v;
}

RadoVerdict columns_condition(const LinearSystem& sys) {
    if (sys.rows() == 1) {
        return single_equation_shortcut(sys.matrix().front());
    }
    return columns_condition_general(sys);
}

Family family_for_system(const LinearSystem& sys) {
    const auto& row = sys.matrix().front();
    const bool shape_ok = sys.rows() == 1 && (sys.cols() == 2 || sys.cols() == 3) &&
                          std::none_of(row.begin(), row.end(), [](const Rational& q) { return q.is_zero(); });
    if (!shape_ok) {
        throw Error("conversion not supported: only single equations in 2 or 3 unknowns with nonzero coefficients");
    }
    const Rational& last = row.back();
    if (sys.cols() == 2) {
        // x2 = -(c1/c2) x1
        const Rational ratio = -(row[0] / last);
        if (ratio == Rational(1)) {
            return Family({PatternTerm::x()});
        }
        return Family({PatternTerm::x(), PatternTerm::affine(ratio, Polynomial())});
    }
    // x3 = -(c1 x1 + c2 x2) / c3
    return Family({PatternTerm::x(), PatternTerm::y(),
                   PatternTerm::affine(-(row[0] / last), Polynomial::monomial(-(row[1] / last), 1))});
}

ConsistencyReport cross_validate(const LinearSystem& sys, int r, std::int64_t max_n, const SearchOptions& options) {
    ConsistencyReport report;
    report.verdict = columns_condition(sys);
    const Family family = family_for_system(sys);
    report.family = family.to_string();
    if (report.verdict.regular) {
        for (std::int64_t n = 1; n <= max_n; ++n) {
            const auto res = search_avoiding(family, Window(IntegerInterval{1, n}), r, options);
            report.rows.push_back({n, r, res.outcome, res.nodes});
            if (res.outcome == Outcome::kExhausted) {
                report.exhausted_at = n;
                break;
            }
        }
        report.consistent = true;
        report.summary = report.exhausted_at
                             ? "regular; unavoidable with " + std::to_string(r) + " colors at N=" +
                                   std::to_string(*report.exhausted_at)
                             : "regular; no exhaustion up to N=" + std::to_string(max_n) + " (not a contradiction)";
        return report;
    }
    for (int colors = 1; colors <= r && !report.avoiding_r; ++colors) {
        bool all_avoid = true;
        for (std::int64_t n = 1; n <= max_n && all_avoid; ++n) {
            const auto res = search_avoiding(family, Window(IntegerInterval{1, n}), colors, options);
            report.rows.push_back({n, colors, res.outcome, res.nodes});
            all_avoid = res.outcome == Outcome::kAvoiding;
        }
        if (all_avoid) {
            report.avoiding_r = colors;
        }
    }
    report.consistent = report.avoiding_r.has_value();
    report.summary = report.consistent ? "not regular; avoiding " + std::to_string(*report.avoiding_r) +
                                             "-colorings at every N <= " + std::to_string(max_n)
                                       : "not regular, but no color count <= " + std::to_string(r) +
                                             " avoided at every N <= " + std::to_string(max_n);
    return report;
}

}  // namespace monoq
