#include "sdd/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "sdd/errors.hpp"

namespace sdd {

bool is_tautology(const Clause& clause) {
  for (int l : clause)
    if (std::find(clause.begin(), clause.end(), -l) != clause.end()) return true;
  return false;
}

Cnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t clause_line = 0;
  bool have_header = false;
  Cnf cnf;
  Clause current;
  bool open = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string tok;
    if (!(fields >> tok) || tok == "c" || tok[0] == 'c') continue;
    if (tok == "%") break;
    if (tok == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      std::string format;
      long vars = -1, clauses = -1;
      if (!(fields >> format >> vars >> clauses) || format != "cnf" || vars < 0 || clauses < 0)
        throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
      cnf.var_count = static_cast<int>(vars);
      cnf.clauses.reserve(static_cast<std::size_t>(clauses));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
    do {
      long lit = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "expected an integer literal, got '" + tok + "'");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        open = false;
        continue;
      }
      if (lit > cnf.var_count || -lit > cnf.var_count)
        throw ParseError(lineno, "literal " + tok + " out of range 1.." + std::to_string(cnf.var_count));
      if (!open) clause_line = lineno;
      open = true;
      current.push_back(static_cast<int>(lit));
    } while (fields >> tok);
  }
  if (!have_header) throw ParseError(0, "missing 'p cnf' header");
  if (open) throw ParseError(clause_line, "unterminated clause (missing 0)");
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Formula to_formula(const Cnf& cnf) {
  std::vector<Formula> clauses;
  for (const auto& clause : cnf.clauses) {
    std::vector<Formula> lits;
    for (int l : clause) lits.push_back(Formula::lit(l));
    clauses.push_back(Formula::disj(std::move(lits)));
  }
  return Formula::conj(std::move(clauses));
}

NodeId compile_cnf(Manager& m, const Cnf& cnf, ClauseOrder order) {
  if (cnf.var_count != m.vtree().var_count())
    throw InputError("CNF has " + std::to_string(cnf.var_count) + " variables but the vtree has " +
                     std::to_string(m.vtree().var_count()));
  std::vector<std::size_t> idx(cnf.clauses.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (order == ClauseOrder::ascending_size) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return cnf.clauses[a].size() < cnf.clauses[b].size();
    });
  }

  NodeId result = kTrue;
  for (std::size_t i : idx) {
    const Clause& clause = cnf.clauses[i];
    if (is_tautology(clause)) continue;
    NodeId c = kFalse;
    for (int l : clause) c = m.disjoin(c, m.literal(l));
    result = m.conjoin(result, c);
    if (result == kFalse) break;
  }
  return result;
}

NodeId compile_formula(Manager& m, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::constant:
      return m.constant(f.value());
    case Formula::Kind::literal:
      return m.literal(f.var(), f.positive());
    case Formula::Kind::negation:
      return m.negate(compile_formula(m, f.children()[0]));
    case Formula::Kind::conj: {
      NodeId acc = kTrue;
      for (const auto& c : f.children()) acc = m.conjoin(acc, compile_formula(m, c));
      return acc;
    }
    case Formula::Kind::disj: {
      NodeId acc = kFalse;
      for (const auto& c : f.children()) acc = m.disjoin(acc, compile_formula(m, c));
      return acc;
    }
  }
  throw InternalError("unknown formula kind");
}

}  // namespace sdd
