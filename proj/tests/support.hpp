#pragma once

// Test-only oracles and fixtures. The SDD evaluator here walks node
// structure directly so it stays independent of the query module.

#include <cstdint>
#include <random>
#include <vector>

#include "sdd/formula.hpp"
#include "sdd/manager.hpp"
#include "sdd/vtree.hpp"

namespace sdd::testing {

// Fig. 1b style vtree over A=1, B=2, C=3, D=4: root(node(B, A), node(D, C)).
inline Vtree abcd_vtree() {
  VtreeBuilder b;
  auto left = b.internal(b.leaf(2), b.leaf(1));
  auto right = b.internal(b.leaf(4), b.leaf(3));
  return b.build(b.internal(left, right));
}

inline constexpr int A = 1, B = 2, C = 3, D = 4;

// (A & B) | (B & C) | (C & D)
inline Formula abcd_function() {
  auto l = [](int x) { return Formula::lit(x); };
  return Formula::disj({Formula::conj({l(A), l(B)}), Formula::conj({l(B), l(C)}),
                        Formula::conj({l(C), l(D)})});
}

inline bool walk_eval(const Manager& m, NodeId n, const std::vector<bool>& a) {
  if (n == kTrue) return true;
  if (n == kFalse) return false;
  if (m.is_literal(n)) {
    int l = m.literal_of(n);
    return a[l > 0 ? l : -l] == (l > 0);
  }
  bool value = false;
  for (const auto& e : m.elements(n))
    if (walk_eval(m, e.prime, a) && walk_eval(m, e.sub, a)) value = true;
  return value;
}

// Bit i is the value under the assignment whose bit (x - 1) gives variable x.
inline std::vector<bool> sdd_table(const Manager& m, NodeId n) {
  int vars = m.vtree().var_count();
  std::vector<bool> table(std::size_t{1} << vars);
  std::vector<bool> a(vars + 1);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int x = 1; x <= vars; ++x) a[x] = (i >> (x - 1)) & 1;
    table[i] = walk_eval(m, n, a);
  }
  return table;
}

inline std::uint64_t count_true(const std::vector<bool>& t) {
  std::uint64_t c = 0;
  for (bool b : t) c += b;
  return c;
}

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// Random formula over 1..vars with and/or/not nodes.
inline Formula random_formula(std::mt19937_64& rng, int vars, int depth) {
  if (depth == 0 || below(rng, 4) == 0) {
    int x = 1 + static_cast<int>(below(rng, vars));
    return Formula::lit(x, below(rng, 2) == 0);
  }
  switch (below(rng, 5)) {
    case 0:
      return Formula::neg(random_formula(rng, vars, depth - 1));
    case 1:
    case 2:
      return Formula::conj({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
    default:
      return Formula::disj({random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)});
  }
}

inline std::vector<Var> iota_vars(int n) {
  std::vector<Var> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

}  // namespace sdd::testing
