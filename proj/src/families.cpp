#include "sdd/families.hpp"

#include <algorithm>

#include "sdd/cnf.hpp"
#include "sdd/errors.hpp"

namespace sdd::families {

namespace {

void check_n(int n) {
  if (n < 1) throw InputError("family size n must be at least 1");
}

VtreeBuilder::Handle chain(VtreeBuilder& b, const std::vector<Var>& vars) {
  VtreeBuilder::Handle h = b.leaf(vars.back());
  for (auto it = vars.rbegin() + 1; it != vars.rend(); ++it) h = b.internal(b.leaf(*it), h);
  return h;
}

// ~Y1 & ... & ~Y(i-1) & Yi as literals.
std::vector<int> first_y_term(const FamilySpec& s, int i) {
  std::vector<int> lits;
  for (int j = 1; j < i; ++j) lits.push_back(-s.y(j));
  lits.push_back(s.y(i));
  return lits;
}

}  // namespace

int FamilySpec::var_count() const {
  switch (family) {
    case Family::A:
      return 2 * n + 1;
    case Family::B:
      return 2 * n;
    case Family::C:
      return 3 * n + 1;
  }
  return 0;
}

Formula formula(const FamilySpec& spec) {
  check_n(spec.n);
  std::vector<Formula> disjuncts;
  for (int i = 1; i <= spec.n; ++i) {
    std::vector<Formula> conj;
    for (int l : first_y_term(spec, i)) conj.push_back(Formula::lit(l));
    if (spec.family == Family::C) {
      Formula x = Formula::lit(spec.x(i)), z = Formula::lit(spec.z(i));
      Formula w_or_z = Formula::disj({Formula::lit(spec.w()), z});
      conj.push_back(Formula::disj({Formula::conj({x, w_or_z}),
                                    Formula::conj({Formula::lit(spec.x(i), false), z})}));
    } else {
      conj.push_back(Formula::lit(spec.x(i)));
    }
    disjuncts.push_back(Formula::conj(std::move(conj)));
  }
  return Formula::disj(std::move(disjuncts));
}

Vtree vtree_for(const FamilySpec& spec) {
  check_n(spec.n);
  std::vector<Var> xs, ys, rest;
  for (int i = 1; i <= spec.n; ++i) xs.push_back(spec.x(i));
  for (int i = spec.n; i >= 1; --i) ys.push_back(spec.y(i));

  VtreeBuilder b;
  auto xy = b.internal(chain(b, xs), chain(b, ys));
  switch (spec.family) {
    case Family::B:
      return b.build(xy);
    case Family::A:
      return b.build(b.internal(xy, b.leaf(spec.z())));
    case Family::C:
      for (int i = 1; i <= spec.n; ++i) rest.push_back(spec.z(i));
      rest.push_back(spec.w());
      return b.build(b.internal(xy, chain(b, rest)));
  }
  throw InternalError("unknown family");
}

NodeId term(Manager& m, std::span<const int> literals) {
  const Vtree& t = m.vtree();
  std::vector<int> value(t.var_count() + 1, 0);
  for (int l : literals) {
    if (l == 0) throw InputError("literal 0 is not a variable");
    int x = l > 0 ? l : -l;
    t.leaf_of(x);
    if (value[x] == -(l > 0 ? 1 : -1)) return kFalse;
    value[x] = l > 0 ? 1 : -1;
  }
  auto build = [&](auto&& self, Vtree::Id v) -> NodeId {
    if (t.is_leaf(v)) {
      int s = value[t.var(v)];
      return s == 0 ? kTrue : m.literal(t.var(v), s > 0);
    }
    NodeId prime = self(self, t.left(v));
    NodeId sub = self(self, t.right(v));
    if (prime == kTrue) return sub;
    if (sub == kTrue) return prime;
    return m.unique_decision(v, {{prime, sub}, {m.negate(prime), kFalse}});
  };
  return build(build, t.root());
}

NodeId build_uncompressed_fa(Manager& m, int n) {
  FamilySpec spec{Family::A, n};
  check_n(n);
  if (m.mode() != Mode::uncompressed) throw InputError("build_uncompressed_fa needs an uncompressed manager");
  if (!(m.vtree() == vtree_for(spec))) throw InputError("manager vtree is not vtree_for(A, n)");

  const Vtree& t = m.vtree();
  Vtree::Id xy = t.left(t.root());
  std::vector<Element> root;
  std::vector<Element> negative;
  for (int i = 1; i <= n; ++i) {
    NodeId y_term = term(m, first_y_term(spec, i));
    NodeId x = m.literal(spec.x(i), true);
    NodeId not_x = m.literal(spec.x(i), false);
    root.push_back({m.unique_decision(xy, {{x, y_term}, {not_x, kFalse}}), kTrue});
    negative.push_back({m.unique_decision(xy, {{not_x, y_term}, {x, kFalse}}), kFalse});
  }
  std::vector<int> none_y;
  for (int j = 1; j <= n; ++j) none_y.push_back(-spec.y(j));
  // {(T, ~Y1 & ... & ~Yn)} trims to the term itself.
  negative.push_back({term(m, none_y), kFalse});
  root.insert(root.end(), negative.begin(), negative.end());
  return m.unique_decision(t.root(), std::move(root));
}

std::size_t reduced_partition_count_fb(Manager& m, int n) {
  FamilySpec spec{Family::B, n};
  check_n(n);
  if (m.mode() != Mode::compressed) throw InputError("reduced_partition_count_fb needs a compressed manager");
  if (!(m.vtree() == vtree_for(spec))) throw InputError("manager vtree is not vtree_for(B, n)");
  NodeId root = compile_formula(m, formula(spec));
  if (!m.is_decision(root) || m.vtree_node(root) != m.vtree().root())
    throw InternalError("B(n) root does not respect the vtree root");
  return m.elements(root).size();
}

}  // namespace sdd::families
