#include "monoq/cnf.hpp"

#include <sstream>

#include "monoq/text.hpp"

namespace monoq {

CnfInstance export_cnf(const CandidateTable& table, int r) {
    if (r < 1 || r > kMaxColors) {
        throw Error("number of colors must be in 1.." + std::to_string(kMaxColors));
    }
    CnfInstance cnf;
    cnf.elements = table.window().size();
    cnf.r = r;
    for (std::size_t e = 0; e < cnf.elements; ++e) {
        std::vector<int> clause;
        for (int c = 0; c < r; ++c) {
            clause.push_back(cnf.variable(e, c));
        }
        cnf.clauses.push_back(std::move(clause));
    }
    for (const auto& set : table.constraint_sets()) {
        for (int c = 0; c < r; ++c) {
            std::vector<int> clause;
            clause.reserve(set.size());
            for (auto e : set) {
                clause.push_back(-cnf.variable(e, c));
            }
            cnf.clauses.push_back(std::move(clause));
        }
    }
    return cnf;
}

std::string to_dimacs(const CnfInstance& cnf, std::string_view comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        for (auto line : text::split(comment, '\n')) {
            out << "c " << line << '\n';
        }
    }
    out << "p cnf " << cnf.variables() << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) {
            out << lit << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

CnfInstance parse_dimacs(std::string_view text, std::size_t elements, int r) {
    CnfInstance cnf;
    cnf.elements = elements;
    cnf.r = r;
    std::istringstream in{std::string(text)};
    std::string token;
    std::vector<int> clause;
    bool header = false;
    std::size_t declared_clauses = 0;
    while (in >> token) {
        if (token == "c") {
            std::getline(in, token);
            continue;
        }
        if (token == "p") {
            std::string fmt;
            long vars = 0;
            in >> fmt >> vars >> declared_clauses;
            if (fmt != "cnf" || vars != cnf.variables()) {
                throw Error("DIMACS header does not match " + std::to_string(elements) + " elements x " +
                            std::to_string(r) + " colors");
            }
            header = true;
            continue;
        }
        const int lit = static_cast<int>(text::parse_int(token));
        if (lit == 0) {
            cnf.clauses.push_back(std::move(clause));
            clause.clear();
        } else {
            clause.push_back(lit);
        }
    }
    if (!header || cnf.clauses.size() != declared_clauses || !clause.empty()) {
        throw Error("malformed DIMACS text");
    }
    return cnf;
}

std::vector<int> parse_assignment(std::string_view text) {
    std::vector<int> lits;
    for (auto raw : text::split(text, '\n')) {
        auto line = text::trim(raw);
        if (line.empty() || line.front() == 'c' || line.front() == 's') {
            continue;
        }
        if (line.front() == 'v') {
            line.remove_prefix(1);
        }
        std::istringstream in{std::string(line)};
        std::string token;
        while (in >> token) {
            const int lit = static_cast<int>(text::parse_int(token));
            if (lit != 0) {
                lits.push_back(lit);
            }
        }
    }
    return lits;
}

Coloring import_assignment(const CnfInstance& cnf, const Window& window, const std::vector<int>& literals) {
    if (window.size() != cnf.elements) {
        throw Error("window size does not match the CNF instance");
    }
    std::vector<bool> truth(static_cast<std::size_t>(cnf.variables()) + 1, false);
    for (int lit : literals) {
        const int var = lit < 0 ? -lit : lit;
        if (var > cnf.variables()) {
            throw Error("literal " + std::to_string(lit) + " outside the instance's variables");
        }
        if (lit > 0) {
            truth[static_cast<std::size_t>(var)] = true;
        }
    }
    std::vector<Color> colors(cnf.elements);
    for (std::size_t e = 0; e < cnf.elements; ++e) {
        int chosen = -1;
        for (int c = 0; c < cnf.r && chosen < 0; ++c) {
            if (truth[static_cast<std::size_t>(cnf.variable(e, c))]) {
                chosen = c;
            }
        }
        if (chosen < 0) {
            throw Error("assignment violates the at-least-one clause of element " + std::to_string(e) + " (" +
                        window.at(e).to_string() + ")");
        }
        colors[e] = static_cast<Color>(chosen);
    }
    return Coloring(window, cnf.r, std::move(colors));
}

}  // namespace monoq
