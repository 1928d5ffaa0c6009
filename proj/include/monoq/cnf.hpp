#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "monoq/coloring.hpp"
#include "monoq/detector.hpp"

namespace monoq {

/// Avoidance as satisfiability. Variable v(e, c) = e*r + c + 1 says element e
/// may take color c. Clauses: at least one color per element, and for every
/// candidate set and color, not all members take that color. At-most-one
/// clauses are omitted: picking any true color per element of a model
/// still avoids every candidate.
struct CnfInstance {
    std::size_t elements = 0;
    int r = 0;
    std::vector<std::vector<int>> clauses;

    int variable(std::size_t element, int color) const { return static_cast<int>(element) * r + color + 1; }
    int variables() const { return static_cast<int>(elements) * r; }
};

CnfInstance export_cnf(const CandidateTable& table, int r);

/// DIMACS CNF text with a `p cnf V C` header.
std::string to_dimacs(const CnfInstance& cnf, std::string_view comment = {});
CnfInstance parse_dimacs(std::string_view text, std::size_t elements, int r);

/// Signed literals from solver output. Accepts `v ...` lines or bare
/// integer lines; ignores `c` and `s` lines and the terminating 0.
std::vector<int> parse_assignment(std::string_view text);

/// Picks the least true color per element. Throws Error when some element has
/// no true color (the at-least-one clause is violated).
Coloring import_assignment(const CnfInstance& cnf, const Window& window, const std::vector<int>& literals);

}  // namespace monoq
