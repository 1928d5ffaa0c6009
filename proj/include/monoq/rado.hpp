#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoq/pattern.hpp"
#include "monoq/rational.hpp"
#include "monoq/search.hpp"

namespace monoq {

/// Homogeneous system A x = 0 over Q; each row is one equation.
class LinearSystem {
public:
    explicit LinearSystem(std::vector<std::vector<Rational>> rows);
    static LinearSystem single(std::vector<Rational> coefficients);

    /// Parses `c1*x1 + c2*x2 + ... = 0`; several equations may be joined with `;`.
    /// Linear terms on the right-hand side are moved to the left.
    static LinearSystem parse(std::string_view text);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<std::vector<Rational>>& matrix() const { return rows_; }
    std::vector<Rational> column(std::size_t j) const;

    std::string to_string() const;

private:
    std::vector<std::vector<Rational>> rows_;
    std::size_t cols_ = 0;
};

/// Outcome of the columns condition. When `regular`, `partition` is an
/// ordered list of column blocks: the first block sums to the zero vector
/// and every later block sums into the span of all earlier columns.
struct RadoVerdict {
    bool regular = false;
    std::vector<std::vector<std::size_t>> partition;
    std::string note;
};

/// Decides the columns condition (dispatches to the subset-sum shortcut for a
/// single equation).
RadoVerdict columns_condition(const LinearSystem& sys);

/// Search over ordered column partitions with exact span tests. At most 14 columns.
RadoVerdict columns_condition_general(const LinearSystem& sys);

/// Single equation: some nonempty set of nonzero coefficients sums to zero.
/// At most 20 nonzero coefficients.
RadoVerdict single_equation_shortcut(const std::vector<Rational>& coefficients);

/// True iff `target` lies in the Q-span of `vectors` (all of equal length).
bool in_span(const std::vector<std::vector<Rational>>& vectors, const std::vector<Rational>& target);

/// The two-variable family whose instances are the positive solutions of a
/// single equation in two or three unknowns; throws Error otherwise.
Family family_for_system(const LinearSystem& sys);

struct ConsistencyRow {
    std::int64_t n = 0;
    int r = 0;
    Outcome outcome = Outcome::kBudgetExceeded;
    std::uint64_t nodes = 0;
};

struct ConsistencyReport {
    RadoVerdict verdict;
    std::string family;
    std::vector<ConsistencyRow> rows;
    /// First window int:1..N found unavoidable (regular systems).
    std::optional<std::int64_t> exhausted_at;
    /// Smallest color count avoiding at every tested N (non-regular systems).
    std::optional<int> avoiding_r;
    bool consistent = false;
    std::string summary;
};

/// Compares the columns condition with searches over int:1..n, n = 1..max_n.
/// Regular systems are searched with `r` colors until the first exhaustion.
/// Non-regular systems must admit an avoiding coloring at every n for some
/// color count <= r.
ConsistencyReport cross_validate(const LinearSystem& sys, int r, std::int64_t max_n, const SearchOptions& options);

}  // namespace monoq
