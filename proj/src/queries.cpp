#include "sdd/queries.hpp"

#include <unordered_map>

#include "sdd/errors.hpp"

namespace sdd {

namespace {

// Partial assignment: +1 true, -1 false, 0 free; indexed by variable.
using Partial = std::vector<std::int8_t>;

Partial partial_from(const Manager& m, std::span<const int> lits, bool negated, bool& conflict) {
  Partial vals(m.vtree().var_count() + 1, 0);
  conflict = false;
  for (int l : lits) {
    if (l == 0) throw InputError("literal 0 is not a variable");
    int x = l > 0 ? l : -l;
    m.vtree().leaf_of(x);
    std::int8_t v = (l > 0) != negated ? 1 : -1;
    if (vals[x] == -v) conflict = true;
    vals[x] = v;
  }
  return vals;
}

// Consistency of n conditioned on a partial assignment.
class ConditionedQueries {
 public:
  ConditionedQueries(const Manager& m, const Partial& vals) : m_(m), vals_(vals) {}

  bool consistent(NodeId n) {
    if (n == kFalse) return false;
    if (n == kTrue) return true;
    if (m_.is_literal(n)) {
      int l = m_.literal_of(n);
      std::int8_t v = vals_[l > 0 ? l : -l];
      return v == 0 || (v > 0) == (l > 0);
    }
    if (auto it = co_.find(index(n)); it != co_.end()) return it->second;
    bool result = false;
    for (const auto& e : m_.elements(n)) {
      if (consistent(e.prime) && consistent(e.sub)) {
        result = true;
        break;
      }
    }
    co_.emplace(index(n), result);
    return result;
  }

  bool valid(NodeId n) {
    if (n == kFalse) return false;
    if (n == kTrue) return true;
    if (m_.is_literal(n)) {
      int l = m_.literal_of(n);
      std::int8_t v = vals_[l > 0 ? l : -l];
      return v != 0 && (v > 0) == (l > 0);
    }
    if (auto it = va_.find(index(n)); it != va_.end()) return it->second;
    bool result = true;
    for (const auto& e : m_.elements(n)) {
      if (consistent(e.prime) && !valid(e.sub)) {
        result = false;
        break;
      }
    }
    va_.emplace(index(n), result);
    return result;
  }

 private:
  const Manager& m_;
  const Partial& vals_;
  std::unordered_map<std::uint32_t, bool> co_;
  std::unordered_map<std::uint32_t, bool> va_;
};

BigInt power_of_two(int k) { return BigInt(1) << k; }

}  // namespace

bool evaluate(const Manager& m, NodeId a, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) <= m.vtree().var_count())
    throw InputError("assignment does not cover every vtree variable");
  std::unordered_map<std::uint32_t, bool> memo;
  auto rec = [&](auto&& self, NodeId n) -> bool {
    if (n == kFalse) return false;
    if (n == kTrue) return true;
    if (m.is_literal(n)) {
      int l = m.literal_of(n);
      return assignment[l > 0 ? l : -l] == (l > 0);
    }
    if (auto it = memo.find(index(n)); it != memo.end()) return it->second;
    bool result = false;
    for (const auto& e : m.elements(n)) {
      if (self(self, e.prime)) {
        result = self(self, e.sub);
        break;
      }
    }
    memo.emplace(index(n), result);
    return result;
  };
  return rec(rec, a);
}

bool is_consistent(Manager& m, NodeId a) { return m.is_consistent(a); }

bool is_valid(Manager& m, NodeId a) { return !m.is_consistent(m.negate(a)); }

bool entails_clause(const Manager& m, NodeId a, std::span<const int> clause) {
  bool conflict = false;
  Partial vals = partial_from(m, clause, /*negated=*/true, conflict);
  if (conflict) return true;  // tautological clause
  return !ConditionedQueries(m, vals).consistent(a);
}

bool is_implicant(const Manager& m, NodeId a, std::span<const int> term) {
  bool conflict = false;
  Partial vals = partial_from(m, term, /*negated=*/false, conflict);
  if (conflict) return true;  // contradictory term
  return ConditionedQueries(m, vals).valid(a);
}

bool equivalent(Manager& m, NodeId a, NodeId b) {
  if (!m.owns(a) || !m.owns(b)) throw InputError("node handle is not from this manager");
  if (m.mode() == Mode::compressed) return a == b;
  if (a == b) return true;
  Manager scratch(m.vtree(), Mode::compressed);
  return reduce(m, a, scratch) == reduce(m, b, scratch);
}

BigInt model_count(const Manager& m, NodeId a) {
  if (!m.owns(a)) throw InputError("node handle is not from this manager");
  const Vtree& t = m.vtree();
  std::unordered_map<std::uint32_t, BigInt> memo;

  // Models of n over the variables of vtree node scope.
  auto scoped = [&](auto&& self, NodeId n, Vtree::Id scope) -> BigInt {
    if (n == kFalse) return 0;
    int scope_vars = t.vars_under(scope);
    if (n == kTrue) return power_of_two(scope_vars);
    Vtree::Id v = m.vtree_node(n);
    BigInt own;
    if (m.is_literal(n)) {
      own = 1;
    } else if (auto it = memo.find(index(n)); it != memo.end()) {
      own = it->second;
    } else {
      for (const auto& e : m.elements(n))
        own += self(self, e.prime, t.left(v)) * self(self, e.sub, t.right(v));
      memo.emplace(index(n), own);
    }
    return own * power_of_two(scope_vars - t.vars_under(v));
  };
  return scoped(scoped, a, t.root());
}

bool entails(Manager& m, NodeId a, NodeId b) {
  return !m.is_consistent(m.conjoin(a, m.negate(b)));
}

void for_each_model(const Manager& m, NodeId a, std::optional<std::size_t> limit,
                    const std::function<bool(const Assignment&)>& visit) {
  if (!m.owns(a)) throw InputError("node handle is not from this manager");
  int n = m.vtree().var_count();
  Partial vals(n + 1, 0);
  Assignment model(n + 1, false);
  std::size_t emitted = 0;
  if (limit && *limit == 0) return;
  if (!ConditionedQueries(m, vals).consistent(a)) return;

  // Depth-first over variables 1..n, pruning inconsistent prefixes.
  auto rec = [&](auto&& self, int x) -> bool {
    if (x > n) {
      ++emitted;
      if (!visit(model)) return false;
      return !(limit && emitted >= *limit);
    }
    for (bool value : {false, true}) {
      vals[x] = value ? 1 : -1;
      model[x] = value;
      if (ConditionedQueries(m, vals).consistent(a) && !self(self, x + 1)) {
        vals[x] = 0;
        return false;
      }
    }
    vals[x] = 0;
    return true;
  };
  rec(rec, 1);
}

std::vector<Assignment> enumerate_models(const Manager& m, NodeId a, std::optional<std::size_t> limit) {
  std::vector<Assignment> models;
  for_each_model(m, a, limit, [&](const Assignment& x) {
    models.push_back(x);
    return true;
  });
  return models;
}

}  // namespace sdd
