#include "monoq/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <thread>

namespace monoq {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::kAvoiding:
            return "avoiding-coloring";
        case Outcome::kExhausted:
            return "exhausted";
        case Outcome::kBudgetExceeded:
            return "budget-exceeded";
    }
    return "unknown";
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "avoiding-coloring") {
        return Outcome::kAvoiding;
    }
    if (s == "exhausted") {
        return Outcome::kExhausted;
    }
    if (s == "budget-exceeded") {
        return Outcome::kBudgetExceeded;
    }
    throw Error("unknown search outcome '" + s + "'");
}

namespace {

using Clock = std::chrono::steady_clock;
using Decision = std::pair<ElementIndex, Color>;

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h = (h ^ ((v >> (8 * i)) & 0xff)) * kFnvPrime;
    }
    return h;
}

enum class Status { kFound, kClosed, kStopped };

// A subtree is abandoned once an earlier subtree has produced a coloring.
struct CancelToken {
    const std::atomic<std::size_t>* best = nullptr;
    std::size_t index = 0;

    bool cancelled() const { return best != nullptr && best->load(std::memory_order_relaxed) < index; }
};

// Shared stop conditions across workers.
struct Limits {
    std::uint64_t max_nodes = 0;
    Clock::time_point deadline = Clock::time_point::max();
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> out_of_budget{false};

    bool charge() {
        const auto n = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (max_nodes != 0 && n > max_nodes) {
            out_of_budget = true;
        }
        if ((n & 255) == 0 && Clock::now() > deadline) {
            out_of_budget = true;
        }
        return !out_of_budget.load(std::memory_order_relaxed);
    }
};

// Static problem data shared read-only by all solver instances.
struct Problem {
    std::size_t n = 0;
    int r = 0;
    bool symmetry = true;
    const std::vector<std::vector<ElementIndex>>* constraints = nullptr;
    std::vector<std::vector<std::uint32_t>> occurs;
    bool trivially_closed = false;
};

class Solver {
public:
    explicit Solver(const Problem& p)
        : p_(p),
          color_(p.n, -1),
          domain_(p.n, p.r >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << p.r) - 1),
          per_color_(static_cast<std::size_t>(p.r), 0) {}

    // Propagates the empty assignment; false on immediate conflict.
    bool root() { return !p_.trivially_closed; }

    bool apply(ElementIndex e, Color c) {
        assign(e, c);
        return propagate();
    }

    /// Explores below the current state. `record_depth` > 0 turns the call
    /// into prefix generation: paths reaching that many decisions are
    /// appended to `leaves` instead of being explored.
    Status dfs(Limits& limits, const CancelToken& cancel, unsigned record_depth,
               std::vector<std::vector<Decision>>* leaves) {
        if (assigned_ == p_.n || (record_depth != 0 && path_.size() == record_depth)) {
            if (record_depth != 0) {
                leaves->push_back(path_);
                return Status::kClosed;
            }
            return Status::kFound;
        }
        const ElementIndex e = select();
        const std::uint32_t dom = domain_[e];
        const int fresh = smallest_unused();
        for (int c = 0; c < p_.r; ++c) {
            if (!(dom & (std::uint32_t{1} << c))) {
                continue;
            }
            if (p_.symmetry && per_color_[static_cast<std::size_t>(c)] == 0 && c != fresh) {
                continue;
            }
            if (!limits.charge() || cancel.cancelled()) {
                return Status::kStopped;
            }
            hash_ = fnv_mix(hash_, (static_cast<std::uint64_t>(e) << 8) | static_cast<std::uint64_t>(c));
            ++nodes_;
            const auto mark_a = assign_trail_.size();
            const auto mark_d = domain_trail_.size();
            path_.emplace_back(e, static_cast<Color>(c));
            if (apply(e, static_cast<Color>(c))) {
                const Status s = dfs(limits, cancel, record_depth, leaves);
                if (s != Status::kClosed) {
                    return s;
                }
            }
            path_.pop_back();
            undo(mark_a, mark_d);
        }
        return Status::kClosed;
    }

    std::vector<Color> colors() const {
        std::vector<Color> out(p_.n);
        for (std::size_t i = 0; i < p_.n; ++i) {
            out[i] = static_cast<Color>(color_[i]);
        }
        return out;
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t hash() const { return hash_; }

private:
    void assign(ElementIndex e, Color c) {
        color_[e] = c;
        domain_trail_.emplace_back(e, domain_[e]);
        domain_[e] = std::uint32_t{1} << c;
        ++per_color_[c];
        ++assigned_;
        assign_trail_.push_back(e);
        queue_.push_back(e);
    }

    bool propagate() {
        bool ok = true;
        while (!queue_.empty()) {
            const ElementIndex e = queue_.back();
            queue_.pop_back();
            if (!ok) {
                continue;
            }
            const int c = color_[e];
            for (auto k : p_.occurs[e]) {
                const auto& members = (*p_.constraints)[k];
                int uncolored = 0;
                ElementIndex last = 0;
                bool mixed = false;
                for (auto m : members) {
                    if (color_[m] < 0) {
                        ++uncolored;
                        last = m;
                        if (uncolored > 1) {
                            break;
                        }
                    } else if (color_[m] != c) {
                        mixed = true;
                        break;
                    }
                }
                if (mixed || uncolored > 1) {
                    continue;
                }
                if (uncolored == 0) {
                    ok = false;
                    break;
                }
                const std::uint32_t bit = std::uint32_t{1} << c;
                if (domain_[last] & bit) {
                    domain_trail_.emplace_back(last, domain_[last]);
                    domain_[last] &= ~bit;
                    if (domain_[last] == 0) {
                        ok = false;
                        break;
                    }
                    if (std::has_single_bit(domain_[last])) {
                        assign(last, static_cast<Color>(std::countr_zero(domain_[last])));
                    }
                }
            }
        }
        return ok;
    }

    void undo(std::size_t mark_a, std::size_t mark_d) {
        while (assign_trail_.size() > mark_a) {
            const ElementIndex e = assign_trail_.back();
            assign_trail_.pop_back();
            --per_color_[static_cast<std::size_t>(color_[e])];
            color_[e] = -1;
            --assigned_;
        }
        while (domain_trail_.size() > mark_d) {
            const auto [e, old] = domain_trail_.back();
            domain_trail_.pop_back();
            domain_[e] = old;
        }
    }

    ElementIndex select() const {
        ElementIndex best = 0;
        int best_size = std::numeric_limits<int>::max();
        std::size_t best_degree = 0;
        for (std::size_t i = 0; i < p_.n; ++i) {
            if (color_[i] >= 0) {
                continue;
            }
            const int size = std::popcount(domain_[i]);
            const std::size_t degree = p_.occurs[i].size();
            if (size < best_size || (size == best_size && degree > best_degree)) {
                best = static_cast<ElementIndex>(i);
                best_size = size;
                best_degree = degree;
            }
        }
        return best;
    }

    int smallest_unused() const {
        for (int c = 0; c < p_.r; ++c) {
            if (per_color_[static_cast<std::size_t>(c)] == 0) {
                return c;
            }
        }
        return p_.r;
    }

    const Problem& p_;
    std::vector<int> color_;
    std::vector<std::uint32_t> domain_;
    std::vector<std::size_t> per_color_;
    std::size_t assigned_ = 0;
    std::vector<ElementIndex> assign_trail_;
    std::vector<std::pair<ElementIndex, std::uint32_t>> domain_trail_;
    std::vector<ElementIndex> queue_;
    std::vector<Decision> path_;
    std::uint64_t nodes_ = 0;
    std::uint64_t hash_ = kFnvOffset;
};

enum class LeafState { kPending, kFound, kClosed, kStopped };

struct LeafResult {
    LeafState state = LeafState::kPending;
    std::uint64_t nodes = 0;
    std::uint64_t hash = 0;
    std::vector<Color> colors;
};

void run_leaf(const Problem& problem, const std::vector<Decision>& prefix, Limits& limits,
              const CancelToken& cancel, LeafResult& out) {
    Solver solver(problem);
    solver.root();
    for (const auto& [e, c] : prefix) {
        // Prefixes were produced by the same deterministic solver, so replay cannot fail.
        solver.apply(e, c);
    }
    const Status s = solver.dfs(limits, cancel, 0, nullptr);
    out.nodes = solver.nodes();
    out.hash = solver.hash();
    if (s == Status::kFound) {
        out.state = LeafState::kFound;
        out.colors = solver.colors();
    } else {
        out.state = s == Status::kClosed ? LeafState::kClosed : LeafState::kStopped;
    }
}

}  // namespace

SearchResult search_avoiding(const CandidateTable& table, int r, const SearchOptions& options) {
    if (r < 1 || r > kMaxColors) {
        throw Error("number of colors must be in 1.." + std::to_string(kMaxColors));
    }
    const auto started = Clock::now();
    SearchResult result;
    result.family = table.family().to_string();
    result.window = table.window().spec();
    result.r = r;
    result.options = options;

    Problem problem;
    problem.n = table.window().size();
    problem.r = r;
    problem.symmetry = options.symmetry;
    problem.constraints = &table.constraint_sets();
    problem.occurs.resize(problem.n);
    for (std::size_t k = 0; k < table.constraint_sets().size(); ++k) {
        const auto& set = table.constraint_sets()[k];
        if (set.size() == 1) {
            problem.trivially_closed = true;
        }
        for (auto e : set) {
            problem.occurs[e].push_back(static_cast<std::uint32_t>(k));
        }
    }

    Limits limits;
    limits.max_nodes = options.budget.max_nodes;
    if (options.budget.max_seconds > 0) {
        limits.deadline = started + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(options.budget.max_seconds));
    }

    auto finish = [&](SearchResult res) {
        res.seconds = std::chrono::duration<double>(Clock::now() - started).count();
        return res;
    };

    // Cut the tree into subtrees at the split depth.
    Solver generator(problem);
    if (!generator.root()) {
        result.outcome = Outcome::kExhausted;
        result.trace_hash = kFnvOffset;
        return finish(result);
    }
    std::vector<std::vector<Decision>> leaves;
    const unsigned depth = std::max(1u, options.split_depth);
    const Status gen = generator.dfs(limits, CancelToken{}, depth, &leaves);
    std::uint64_t nodes = generator.nodes();
    std::uint64_t hash = generator.hash();
    if (gen == Status::kStopped) {
        result.outcome = Outcome::kBudgetExceeded;
        result.nodes = nodes;
        result.trace_hash = hash;
        return finish(result);
    }

    std::vector<LeafResult> outcomes(leaves.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(leaves.size())));

    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= leaves.size() || limits.out_of_budget.load()) {
                return;
            }
            if (i > best.load()) {
                continue;
            }
            run_leaf(problem, leaves[i], limits, CancelToken{&best, i}, outcomes[i]);
            if (outcomes[i].state == LeafState::kFound) {
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    const std::size_t found = best.load();
    const std::size_t upto = found == std::numeric_limits<std::size_t>::max() ? leaves.size() : found + 1;
    bool complete = true;
    for (std::size_t i = 0; i < upto; ++i) {
        nodes += outcomes[i].nodes;
        hash = fnv_mix(hash, outcomes[i].hash);
        if (outcomes[i].state == LeafState::kPending || outcomes[i].state == LeafState::kStopped) {
            complete = false;
        }
    }
    result.nodes = nodes;
    result.trace_hash = hash;
    if (found != std::numeric_limits<std::size_t>::max()) {
        result.outcome = Outcome::kAvoiding;
        result.coloring = Coloring(table.window(), r, outcomes[found].colors);
    } else if (complete) {
        result.outcome = Outcome::kExhausted;
    } else {
        result.outcome = Outcome::kBudgetExceeded;
    }
    return finish(result);
}

SearchResult search_avoiding(const Family& family, const Window& window, int r, const SearchOptions& options) {
    return search_avoiding(CandidateTable::build(family, window), r, options);
}

}  // namespace monoq
