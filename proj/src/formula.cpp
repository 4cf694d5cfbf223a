#include "sdd/formula.hpp"

#include <algorithm>

#include "sdd/errors.hpp"

namespace sdd {

Formula Formula::constant(bool value) {
  return Formula(std::make_shared<const Node>(Node{Kind::constant, value, 0, {}}));
}

Formula Formula::lit(Var x, bool positive) {
  if (x < 1) throw InputError("formula variables must be >= 1");
  return Formula(std::make_shared<const Node>(Node{Kind::literal, positive, x, {}}));
}

Formula Formula::lit(int signed_lit) {
  if (signed_lit == 0) throw InputError("literal 0 is not a variable");
  return lit(signed_lit > 0 ? signed_lit : -signed_lit, signed_lit > 0);
}

Formula Formula::conj(std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{Kind::conj, false, 0, std::move(children)}));
}

Formula Formula::disj(std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{Kind::disj, false, 0, std::move(children)}));
}

Formula Formula::neg(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Kind::negation, false, 0, {std::move(child)}}));
}

Var Formula::max_var() const {
  Var m = node_->var;
  for (const auto& c : node_->children) m = std::max(m, c.max_var());
  return m;
}

bool Formula::evaluate(const std::vector<bool>& assignment) const {
  switch (node_->kind) {
    case Kind::constant:
      return node_->value;
    case Kind::literal:
      if (node_->var >= static_cast<Var>(assignment.size()))
        throw InputError("assignment is missing variable " + std::to_string(node_->var));
      return assignment[node_->var] == node_->value;
    case Kind::conj:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [&](const Formula& c) { return c.evaluate(assignment); });
    case Kind::disj:
      return std::any_of(node_->children.begin(), node_->children.end(),
                         [&](const Formula& c) { return c.evaluate(assignment); });
    case Kind::negation:
      return !node_->children[0].evaluate(assignment);
  }
  return false;
}

std::string Formula::to_string() const {
  switch (node_->kind) {
    case Kind::constant:
      return node_->value ? "T" : "F";
    case Kind::literal:
      return (node_->value ? "" : "-") + std::to_string(node_->var);
    case Kind::negation:
      return "~" + node_->children[0].to_string();
    case Kind::conj:
    case Kind::disj: {
      if (node_->children.empty()) return node_->kind == Kind::conj ? "T" : "F";
      std::string sep = node_->kind == Kind::conj ? " & " : " | ";
      std::string out = "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) out += sep;
        out += node_->children[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

bool oracle_eval(const Formula& f, const std::vector<bool>& assignment) {
  return f.evaluate(assignment);
}

std::vector<bool> oracle_truth_table(const Formula& f, int var_count) {
  if (var_count < 0 || var_count > kMaxOracleVars)
    throw InputError("oracle supports at most " + std::to_string(kMaxOracleVars) + " variables");
  std::size_t rows = std::size_t{1} << var_count;
  std::vector<bool> table(rows);
  std::vector<bool> assignment(var_count + 1, false);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int x = 1; x <= var_count; ++x) assignment[x] = (i >> (x - 1)) & 1;
    table[i] = f.evaluate(assignment);
  }
  return table;
}

std::uint64_t oracle_count(const Formula& f, int var_count) {
  auto table = oracle_truth_table(f, var_count);
  return static_cast<std::uint64_t>(std::count(table.begin(), table.end(), true));
}

}  // namespace sdd
