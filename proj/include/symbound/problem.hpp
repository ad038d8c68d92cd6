#pragma once

#include <string>
#include <vector>

#include "symbound/cone.hpp"
#include "symbound/formula.hpp"

namespace symbound {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_),
          column(col_) {}
};

enum class BoundDirection { Upper, Lower, Both };

/// Parsed problem file: declarations, assumptions, objective and options.
struct ProblemFile {
    std::string name;
    VarTablePtr vars;
    std::vector<VarId> keep;               // keep-set W; defaults to all declared
    std::vector<Formula> assumptions;      // conjunction
    Term objective;
    BoundDirection direction = BoundDirection::Both;
    int depth = 3;
    OrderKind order = OrderKind::EffectiveDegree;
    Engine engine = Engine::Local;

    // Input-shape statistics (assumption atoms by relation; floor terms in
    // assumptions and objective).
    int n_eq = 0, n_ineq = 0, n_floors = 0;
};

ProblemFile parse_problem(const std::string& text, const std::string& name = "problem");
std::string print_problem(const ProblemFile& p);
bool problems_equal(const ProblemFile& a, const ProblemFile& b);

/// Parses a single arithmetic expression against existing declarations.
Term parse_term_text(const std::string& text, const VarTablePtr& vars);

}  // namespace symbound
