#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sdd/formula.hpp"
#include "sdd/manager.hpp"

namespace sdd {

using Clause = std::vector<int>;  // DIMACS signed literals

struct Cnf {
  int var_count = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

// Contains some literal together with its complement.
bool is_tautology(const Clause& clause);

// "c" comments, a "p cnf <vars> <clauses>" header, then 0-terminated
// clauses that may span lines. A "%" line ends the clause section.
Cnf parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf& cnf);

Formula to_formula(const Cnf& cnf);

enum class ClauseOrder { file, ascending_size };

// Disjoins each clause's literals, then conjoins the clauses under the given
// order. Tautological clauses are skipped.
NodeId compile_cnf(Manager& m, const Cnf& cnf, ClauseOrder order = ClauseOrder::file);

// Structural fold: literals, Apply for and/or, negation for not.
NodeId compile_formula(Manager& m, const Formula& f);

}  // namespace sdd
