#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutfrac/cases.hpp"
#include "cutfrac/error.hpp"

namespace cutfrac {

/// Malformed JSON; `byte` is the offset reported by the parser.
class ParseError : public Error {
public:
    ParseError(std::size_t byte, const std::string& message)
        : Error(ErrorKind::InvalidInput, message), byte_(byte) {}
    std::size_t byte() const noexcept { return byte_; }

private:
    std::size_t byte_;
};

struct ProblemParameters {
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> beta_gamma;
    std::optional<int> n;
    std::optional<int> levels;
    std::optional<int> n0;
    std::optional<std::uint64_t> seed;
};

struct Problem {
    ManufacturedCase problem;
    ProblemParameters parameters;
};

/// "example1", "example2" or "example3"; `a_gamma` is only accepted for example3 and
/// must list one value per edge.
ManufacturedCase named_case(const std::string& name, const std::optional<std::vector<double>>& a_gamma = {});

/// Either a named case:
///   {"rhs": "example1", "a_gamma": [...], "parameters": {...}}
/// or an explicit problem:
///   {"domain": [x0, y0, x1, y1],
///    "nodes": [[x, y], ...],
///    "edges": [{"points": [[x, y], ...], "a_gamma": 0, "endpoints": [i, j]}, ...],
///    "permeability": 1 | [a_0, a_1, ...],
///    "rhs": {"f": 1, "f_gamma": 0},
///    "bc": {"left": {"type": "dirichlet", "value": 0}, "top": {"type": "neumann"}, ...},
///    "parameters": {"beta": .., "gamma": .., "beta_gamma": .., "n": .., "levels": .., "n0": .., "seed": ..}}
/// Missing sides default to Dirichlet 0. Unknown keys are rejected.
/// Throws ParseError for malformed JSON, InvalidInput for schema violations,
/// MissingExact for "value": "exact" without an exact solution.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

} // namespace cutfrac
