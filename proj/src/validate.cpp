#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sdd/manager.hpp"

namespace sdd {

namespace {

constexpr int kMaxTruthTableVars = 16;

// Truth tables as packed bitsets; bit i is the value under the assignment
// whose bit (x - 1) gives variable x.
class TruthTables {
 public:
  TruthTables(const Manager& m, int vars)
      : m_(m), vars_(vars), words_(((std::size_t{1} << vars) + 63) / 64) {}

  const std::vector<std::uint64_t>& of(NodeId n) {
    if (auto it = memo_.find(index(n)); it != memo_.end()) return it->second;
    std::vector<std::uint64_t> table(words_, 0);
    if (n == kTrue) {
      set_all(table);
    } else if (m_.is_literal(n)) {
      int lit = m_.literal_of(n);
      int x = lit > 0 ? lit : -lit;
      for (std::size_t i = 0; i < (std::size_t{1} << vars_); ++i) {
        bool value = (i >> (x - 1)) & 1;
        if (value == (lit > 0)) table[i / 64] |= std::uint64_t{1} << (i % 64);
      }
    } else if (m_.is_decision(n)) {
      auto elems = m_.elements(n);
      std::vector<Element> copy(elems.begin(), elems.end());
      for (const auto& e : copy) {
        const auto p = of(e.prime);
        const auto& s = of(e.sub);
        for (std::size_t w = 0; w < words_; ++w) table[w] |= p[w] & s[w];
      }
    }
    return memo_.emplace(index(n), std::move(table)).first->second;
  }

  void set_all(std::vector<std::uint64_t>& table) const {
    std::size_t bits = std::size_t{1} << vars_;
    for (std::size_t i = 0; i < bits; ++i) table[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  std::size_t words() const { return words_; }

 private:
  const Manager& m_;
  int vars_;
  std::size_t words_;
  std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> memo_;
};

}  // namespace

std::vector<Violation> validate(const Manager& m, NodeId root) {
  std::vector<Violation> out;
  if (!m.owns(root)) {
    out.push_back({root, "handle not owned by manager"});
    return out;
  }
  const Vtree& t = m.vtree();
  bool semantic = t.var_count() <= kMaxTruthTableVars;
  TruthTables tables(m, semantic ? t.var_count() : 0);

  std::unordered_set<std::uint32_t> seen{index(root)};
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (!m.is_decision(n)) continue;
    Vtree::Id v = m.vtree_node(n);
    auto elems = m.elements(n);
    auto report = [&](std::string what) { out.push_back({n, std::move(what)}); };

    for (const auto& e : elems) {
      for (NodeId c : {e.prime, e.sub})
        if (seen.insert(index(c)).second) stack.push_back(c);
    }
    if (t.is_leaf(v)) {
      report("decision node respects a vtree leaf");
      continue;
    }
    if (elems.empty()) {
      report("decision node has no elements");
      continue;
    }
    for (const auto& e : elems) {
      Vtree::Id pv = m.vtree_node(e.prime);
      if (pv == Vtree::kNone || !t.in_left(v, pv))
        report("prime " + std::to_string(index(e.prime)) + " does not respect the left subtree");
      Vtree::Id sv = m.vtree_node(e.sub);
      if (sv != Vtree::kNone && !t.in_right(v, sv))
        report("sub " + std::to_string(index(e.sub)) + " does not respect the right subtree");
    }

    if (elems.size() == 1) report("trimmable: single element {(T, a)}");
    if (elems.size() == 2) {
      bool tf = (elems[0].sub == kTrue && elems[1].sub == kFalse) ||
                (elems[0].sub == kFalse && elems[1].sub == kTrue);
      if (tf) report("trimmable: {(a, T), (~a, F)}");
    }

    if (m.mode() == Mode::compressed) {
      std::vector<std::uint32_t> subs;
      for (const auto& e : elems) subs.push_back(index(e.sub));
      std::sort(subs.begin(), subs.end());
      if (std::adjacent_find(subs.begin(), subs.end()) != subs.end())
        report("not compressed: repeated sub");
    }

    if (!semantic) continue;
    std::vector<std::uint64_t> any(tables.words(), 0);
    bool overlap = false;
    for (const auto& e : elems) {
      const auto& p = tables.of(e.prime);
      bool consistent = false;
      for (std::size_t w = 0; w < p.size(); ++w) {
        consistent |= p[w] != 0;
        overlap |= (any[w] & p[w]) != 0;
        any[w] |= p[w];
      }
      if (!consistent) report("prime " + std::to_string(index(e.prime)) + " is inconsistent");
    }
    if (overlap) report("primes are not mutually exclusive");
    std::vector<std::uint64_t> full(tables.words(), 0);
    tables.set_all(full);
    if (any != full) report("primes are not exhaustive");
  }
  return out;
}

}  // namespace sdd
