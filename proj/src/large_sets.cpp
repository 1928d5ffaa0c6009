#include "monoq/large_sets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <unordered_set>

namespace monoq {

std::string to_string(GroupMode m) { return m == GroupMode::kAdd ? "add" : "mul"; }

GroupMode group_mode_from_string(const std::string& s) {
    if (s == "add" || s == "+") {
        return GroupMode::kAdd;
    }
    if (s == "mul" || s == "*") {
        return GroupMode::kMul;
    }
    throw Error("group mode must be add or mul, got '" + s + "'");
}

Rational group_identity(GroupMode m) { return m == GroupMode::kAdd ? Rational(0) : Rational(1); }

Rational group_op(GroupMode m, const Rational& a, const Rational& b) {
    return m == GroupMode::kAdd ? a + b : a * b;
}

Rational group_div(GroupMode m, const Rational& a, const Rational& b) {
    return m == GroupMode::kAdd ? a - b : a / b;
}

namespace {

bool in_group(GroupMode m, const Rational& q) { return m == GroupMode::kAdd || !q.is_zero(); }

bool contains(const ElementSet& s, const Rational& q) { return s.count(q) != 0; }

}  // namespace

ShapeF::ShapeF(std::vector<Rational> elements, GroupMode mode) : mode_(mode) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty()) {
        throw Error("shape F must be nonempty");
    }
    for (const auto& f : elements) {
        if (!in_group(mode, f)) {
            throw Error("shape F may not contain 0 in multiplicative mode");
        }
    }
    elements_ = std::move(elements);
}

std::vector<Rational> ShapeF::translate(const Rational& x) const {
    std::vector<Rational> out;
    out.reserve(elements_.size());
    for (const auto& f : elements_) {
        out.push_back(group_op(mode_, f, x));
    }
    return out;
}

ElementSet finite_sums(const IpSetSpec& spec) {
    const auto r = spec.generators.size();
    if (r == 0 || r > kMaxIpGenerators) {
        throw Error("finite sums need between 1 and 24 generators");
    }
    for (const auto& g : spec.generators) {
        if (!in_group(spec.mode, g)) {
            throw Error("generator 0 is not a group element in multiplicative mode");
        }
    }
    // sums[mask] built from sums[mask without its lowest bit].
    std::vector<Rational> sums(std::size_t{1} << r);
    sums[0] = group_identity(spec.mode);
    ElementSet out;
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        sums[mask] = group_op(spec.mode, sums[mask & (mask - 1)], spec.generators[low]);
        out.insert(sums[mask]);
    }
    return out;
}

std::optional<Rational> is_thick_for(const ElementSet& a, const Window& w, const ShapeF& f) {
    for (const auto& x : w.elements()) {
        if (!in_group(f.mode(), x)) {
            continue;
        }
        bool inside = true;
        for (const auto& fx : f.translate(x)) {
            if (!contains(a, fx)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            return x;
        }
    }
    return std::nullopt;
}

SyndeticResult is_syndetic_for(const ElementSet& a, const Window& w, const ShapeF& f,
                               const std::vector<Rational>& core) {
    SyndeticResult res;
    res.covered = true;
    for (const auto& c : core) {
        if (!in_group(f.mode(), c)) {
            throw Error("core contains 0 in multiplicative mode");
        }
        bool hit = false;
        for (const auto& g : f.elements()) {
            const Rational back = group_div(f.mode(), c, g);
            if (!w.contains(back)) {
                throw Error("core element " + c.to_string() + " is not interior: " + back.to_string() +
                            " lies outside the window");
            }
            hit = hit || contains(a, back);
        }
        if (!hit) {
            res.covered = false;
            res.uncovered.push_back(c);
        }
    }
    return res;
}

namespace {

// Set cover of a fixed target list by translates f o A, |F| <= limit.
class CoverSearch {
public:
    CoverSearch(const ElementSet& a, std::vector<Rational> targets, GroupMode mode, std::size_t limit)
        : targets_(std::move(targets)), limit_(limit) {
        // hits[f] = bitmask of targets t with t o f^{-1} in A.
        std::map<Rational, std::uint64_t> hits;
        for (std::size_t i = 0; i < targets_.size(); ++i) {
            for (const auto& x : a) {
                if (!in_group(mode, x)) {
                    continue;
                }
                hits[group_div(mode, targets_[i], x)] |= std::uint64_t{1} << i;
            }
        }
        for (const auto& [f, m] : hits) {
            options_.push_back({f, m});
        }
        // Widest translates first, ties by value.
        std::stable_sort(options_.begin(), options_.end(), [](const auto& p, const auto& q) {
            return std::popcount(p.second) > std::popcount(q.second);
        });
        for (const auto& o : options_) {
            max_cover_ = std::max(max_cover_, std::popcount(o.second));
        }
    }

    std::optional<std::vector<Rational>> run() {
        const std::uint64_t all =
            targets_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << targets_.size()) - 1;
        std::vector<Rational> chosen;
        if (dfs(0, all, chosen)) {
            return chosen;
        }
        return std::nullopt;
    }

private:
    bool dfs(std::uint64_t covered, std::uint64_t all, std::vector<Rational>& chosen) {
        if (covered == all) {
            return true;
        }
        const std::size_t slots = limit_ - chosen.size();
        const auto missing = static_cast<std::size_t>(std::popcount(all & ~covered));
        if (slots == 0 || slots * static_cast<std::size_t>(max_cover_) < missing) {
            return false;
        }
        const auto first = static_cast<std::size_t>(std::countr_zero(all & ~covered));
        for (const auto& [f, m] : options_) {
            if (!(m >> first & 1)) {
                continue;
            }
            chosen.push_back(f);
            if (dfs(covered | m, all, chosen)) {
                return true;
            }
            chosen.pop_back();
        }
        return false;
    }

    std::vector<Rational> targets_;
    std::size_t limit_;
    std::vector<std::pair<Rational, std::uint64_t>> options_;
    int max_cover_ = 0;
};

}  // namespace

std::optional<PiecewiseWitness> piecewise_syndetic_witness(const ElementSet& a, const Window& w, std::size_t max_f,
                                                           const ShapeF& t) {
    if (max_f == 0) {
        throw Error("piecewise syndetic search needs max |F| >= 1");
    }
    if (t.size() > 64) {
        throw Error("shape T is limited to 64 elements");
    }
    for (const auto& x : w.elements()) {
        if (!in_group(t.mode(), x)) {
            continue;
        }
        auto targets = t.translate(x);
        if (!std::all_of(targets.begin(), targets.end(), [&](const Rational& q) { return w.contains(q); })) {
            continue;
        }
        CoverSearch search(a, std::move(targets), t.mode(), std::min(max_f, t.size()));
        if (auto f = search.run()) {
            return PiecewiseWitness{ShapeF(std::move(*f), t.mode()), x};
        }
    }
    return std::nullopt;
}

namespace {

class IpSearch {
public:
    IpSearch(std::vector<Rational> candidates, const ElementSet& a, std::size_t r, GroupMode mode, bool distinct,
             std::uint64_t budget)
        : cands_(std::move(candidates)), a_(a), r_(r), mode_(mode), distinct_(distinct), budget_(budget) {}

    std::optional<std::vector<Rational>> run() {
        std::vector<std::size_t> picked;
        std::vector<Rational> sums;
        if (dfs(0, picked, sums)) {
            std::vector<Rational> gens;
            for (auto i : picked) {
                gens.push_back(cands_[i]);
            }
            std::sort(gens.begin(), gens.end());
            return gens;
        }
        return std::nullopt;
    }

    bool budget_hit() const { return budget_hit_; }

private:
    bool dfs(std::size_t start, std::vector<std::size_t>& picked, std::vector<Rational>& sums) {
        if (picked.size() == r_) {
            return true;
        }
        for (std::size_t i = start; i < cands_.size(); ++i) {
            if (budget_ != 0 && ++nodes_ > budget_) {
                budget_hit_ = true;
                return false;
            }
            const Rational& s = cands_[i];
            const std::size_t before = sums.size();
            bool ok = true;
            std::vector<Rational> fresh{s};
            for (std::size_t k = 0; k < before; ++k) {
                fresh.push_back(group_op(mode_, sums[k], s));
            }
            for (const auto& v : fresh) {
                if (!contains(a_, v)) {
                    ok = false;
                    break;
                }
            }
            if (ok && distinct_) {
                std::unordered_set<Rational> seen(sums.begin(), sums.end());
                for (const auto& v : fresh) {
                    if (!seen.insert(v).second) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) {
                continue;
            }
            picked.push_back(i);
            sums.insert(sums.end(), fresh.begin(), fresh.end());
            if (dfs(distinct_ ? i + 1 : i, picked, sums)) {
                return true;
            }
            sums.resize(before);
            picked.pop_back();
            if (budget_hit_) {
                return false;
            }
        }
        return false;
    }

    std::vector<Rational> cands_;
    const ElementSet& a_;
    std::size_t r_;
    GroupMode mode_;
    bool distinct_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool budget_hit_ = false;
};

}  // namespace

IpSearchResult find_ip_r(const ElementSet& a, std::size_t r, GroupMode mode, const IpSearchOptions& options) {
    if (r == 0 || r > kMaxIpGenerators) {
        throw Error("IP_r search needs 1 <= r <= 24");
    }
    std::vector<Rational> cands;
    for (const auto& q : a) {
        if (in_group(mode, q)) {
            cands.push_back(q);
        }
    }
    IpSearchResult res;
    if (r <= options.exhaustive_cap) {
        IpSearch search(cands, a, r, mode, options.distinct_sums, 0);
        res.generators = search.run();
        res.exhaustive = true;
        return res;
    }
    res.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, options.restarts); ++attempt) {
        if (attempt > 0) {
            std::shuffle(cands.begin(), cands.end(), rng);
        }
        IpSearch search(cands, a, r, mode, options.distinct_sums, options.node_budget);
        if (auto g = search.run()) {
            res.generators = std::move(g);
            return res;
        }
        if (!search.budget_hit() && attempt == 0) {
            // The unshuffled pass finished within budget, so it was complete.
            res.exhaustive = true;
            return res;
        }
    }
    return res;
}

IpStarResult is_ip_r_star(const ElementSet& a, const Window& w, std::size_t r, GroupMode mode,
                          const IpSearchOptions& options) {
    ElementSet complement;
    for (const auto& q : w.elements()) {
        if (!contains(a, q)) {
            complement.insert(q);
        }
    }
    const auto found = find_ip_r(complement, r, mode, options);
    IpStarResult res;
    res.holds = !found.generators.has_value();
    res.exhaustive = found.exhaustive || found.generators.has_value();
    res.avoiding_generators = found.generators;
    return res;
}

PolynomialMapping::PolynomialMapping(std::size_t index_size, std::vector<Monomial> monomials, GroupMode mode)
    : index_size_(index_size), monomials_(std::move(monomials)), mode_(mode) {
    if (index_size_ == 0) {
        throw Error("polynomial mapping needs a nonempty index set");
    }
    const Rational id = group_identity(mode_);
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        const auto& m = monomials_[i];
        std::size_t expect = 1;
        for (unsigned d = 0; d < m.degree; ++d) {
            if (expect > 10'000'000 / index_size_) {
                throw Error("monomial " + std::to_string(i) + " table is too large");
            }
            expect *= index_size_;
        }
        if (m.table.size() != expect) {
            throw Error("monomial " + std::to_string(i) + " table has " + std::to_string(m.table.size()) +
                        " entries, expected " + std::to_string(expect));
        }
        for (const auto& v : m.table) {
            if (!in_group(mode_, v)) {
                throw Error("monomial " + std::to_string(i) + " takes the value 0 in multiplicative mode");
            }
        }
        if (m.degree == 0 && m.table[0] != id) {
            throw Error("degree-0 monomial must be the identity");
        }
    }
}

Rational PolynomialMapping::eval(const std::vector<std::size_t>& alpha) const {
    std::vector<bool> seen(index_size_, false);
    for (auto s : alpha) {
        if (s >= index_size_ || seen[s]) {
            throw Error("subset must list distinct indices below " + std::to_string(index_size_));
        }
        seen[s] = true;
    }
    Rational acc = group_identity(mode_);
    for (const auto& m : monomials_) {
        if (m.degree == 0) {
            acc = group_op(mode_, acc, m.table[0]);
            continue;
        }
        if (alpha.empty()) {
            continue;
        }
        // Odometer over alpha^degree.
        std::vector<std::size_t> digit(m.degree, 0);
        while (true) {
            std::size_t idx = 0;
            for (unsigned k = 0; k < m.degree; ++k) {
                idx = idx * index_size_ + alpha[digit[k]];
            }
            acc = group_op(mode_, acc, m.table[idx]);
            unsigned k = m.degree;
            while (k > 0 && ++digit[k - 1] == alpha.size()) {
                digit[k - 1] = 0;
                --k;
            }
            if (k == 0) {
                break;
            }
        }
    }
    return acc;
}

unsigned PolynomialMapping::degree_upper_bound() const {
    unsigned d = 0;
    for (const auto& m : monomials_) {
        d = std::max(d, m.degree);
    }
    return d;
}

}  // namespace monoq
