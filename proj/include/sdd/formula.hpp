#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sdd/vtree.hpp"

namespace sdd {

// Immutable Boolean formula tree over variables numbered from 1. Copies
// share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { constant, literal, conj, disj, negation };

  static Formula constant(bool value);
  static Formula lit(Var x, bool positive);
  static Formula lit(int signed_lit);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula neg(Formula child);

  Kind kind() const { return node_->kind; }
  bool value() const { return node_->value; }
  Var var() const { return node_->var; }
  bool positive() const { return node_->value; }
  const std::vector<Formula>& children() const { return node_->children; }

  // Largest variable mentioned; 0 for constant-only formulas.
  Var max_var() const;

  // assignment is indexed by variable; throws InputError when it does not
  // cover a variable reached during evaluation.
  bool evaluate(const std::vector<bool>& assignment) const;

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    bool value = false;
    Var var = 0;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline constexpr int kMaxOracleVars = 24;

// Direct evaluation under a complete assignment.
bool oracle_eval(const Formula& f, const std::vector<bool>& assignment);

// Models over variables 1..var_count by enumerating all 2^var_count
// assignments.
std::uint64_t oracle_count(const Formula& f, int var_count);

// Truth table over 1..var_count; bit i is the value under the assignment
// whose bit (x - 1) gives variable x.
std::vector<bool> oracle_truth_table(const Formula& f, int var_count);

}  // namespace sdd
