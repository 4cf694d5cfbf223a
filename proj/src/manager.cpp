#include "sdd/manager.hpp"

#include <algorithm>

#include "sdd/errors.hpp"

namespace sdd {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

bool by_prime(const Element& a, const Element& b) {
  return index(a.prime) < index(b.prime) ||
         (a.prime == b.prime && index(a.sub) < index(b.sub));
}

}  // namespace

Manager::Manager(Vtree vtree, Mode mode)
    : vtree_(std::move(vtree)),
      mode_(mode),
      unique_(64, DecisionHash{this}, DecisionEq{this}) {
  nodes_.push_back({NodeKind::false_const, Vtree::kNone, 0, 0, 0});
  nodes_.push_back({NodeKind::true_const, Vtree::kNone, 0, 0, 0});
  literal_ids_.assign(vtree_.var_count() + 1, {kFalse, kFalse});
}

const Manager::NodeData& Manager::data(NodeId n) const {
  if (!owns(n)) throw InputError("node handle " + std::to_string(index(n)) + " is not from this manager");
  return nodes_[index(n)];
}

void Manager::check_owned(NodeId n) const { data(n); }

int Manager::literal_of(NodeId n) const {
  const auto& d = data(n);
  if (d.kind != NodeKind::literal) throw InputError("node is not a literal");
  return d.lit;
}

std::span<const Element> Manager::elements(NodeId n) const {
  const auto& d = data(n);
  return {pool_.data() + d.begin, d.count};
}

NodeId Manager::literal(Var x, bool positive) {
  Vtree::Id leaf = vtree_.leaf_of(x);
  NodeId& slot = literal_ids_[x][positive ? 1 : 0];
  if (slot == kFalse) {
    slot = NodeId{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back({NodeKind::literal, leaf, positive ? x : -x, 0, 0});
  }
  return slot;
}

NodeId Manager::literal(int signed_lit) {
  if (signed_lit == 0) throw InputError("literal 0 is not a variable");
  return literal(signed_lit > 0 ? signed_lit : -signed_lit, signed_lit > 0);
}

std::size_t Manager::hash_key(Vtree::Id v, std::span<const Element> elems) {
  std::uint64_t h = mix(static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL);
  for (const auto& e : elems)
    h = mix(h ^ ((static_cast<std::uint64_t>(index(e.prime)) << 32) | index(e.sub)));
  return static_cast<std::size_t>(h);
}

std::size_t Manager::DecisionHash::operator()(NodeId n) const {
  return hash_key(m->vtree_node(n), m->elements(n));
}

std::size_t Manager::DecisionHash::operator()(
    const std::pair<Vtree::Id, std::span<const Element>>& key) const {
  return hash_key(key.first, key.second);
}

bool Manager::DecisionEq::operator()(NodeId a, NodeId b) const { return a == b; }

bool Manager::DecisionEq::operator()(const std::pair<Vtree::Id, std::span<const Element>>& key,
                                     NodeId n) const {
  if (m->vtree_node(n) != key.first) return false;
  auto elems = m->elements(n);
  return std::equal(elems.begin(), elems.end(), key.second.begin(), key.second.end());
}

NodeId Manager::store(Vtree::Id v, std::span<const Element> elements) {
  auto begin = static_cast<std::uint32_t>(pool_.size());
  pool_.insert(pool_.end(), elements.begin(), elements.end());
  NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back({NodeKind::decision, v, 0, begin, static_cast<std::uint32_t>(elements.size())});
  return id;
}

NodeId Manager::intern(Vtree::Id v, std::vector<Element>& sorted) {
  std::pair<Vtree::Id, std::span<const Element>> key{v, sorted};
  if (auto it = unique_.find(key); it != unique_.end()) return *it;
  NodeId id = store(v, sorted);
  unique_.insert(id);
  return id;
}

NodeId Manager::unchecked_decision(Vtree::Id v, std::vector<Element> elements) {
  if (vtree_.is_leaf(v)) throw InputError("decision nodes must respect an internal vtree node");
  for (const auto& e : elements) {
    check_owned(e.prime);
    check_owned(e.sub);
  }
  return store(v, elements);
}

bool Manager::prime_consistent(NodeId p) {
  if (mode_ == Mode::compressed) return p != kFalse;
  return is_consistent(p);
}

std::vector<Element> Manager::compress(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end(), [](const Element& a, const Element& b) {
    return index(a.sub) < index(b.sub) ||
           (a.sub == b.sub && index(a.prime) < index(b.prime));
  });
  std::vector<Element> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    if (!out.empty() && out.back().sub == e.sub)
      out.back().prime = apply_rec(out.back().prime, e.prime, Op::disjoin);
    else
      out.push_back(e);
  }
  return out;
}

NodeId Manager::unique_decision(Vtree::Id v, std::vector<Element> elements) {
  if (vtree_.is_leaf(v)) throw InputError("decision nodes must respect an internal vtree node");
  for (const auto& e : elements) {
    check_owned(e.prime);
    check_owned(e.sub);
  }
  std::erase_if(elements, [&](const Element& e) { return !prime_consistent(e.prime); });
  if (elements.empty()) throw InternalError("decision node with no consistent elements");

  if (mode_ == Mode::compressed) elements = compress(std::move(elements));

  // Trimming. The primes form a partition, so a lone element's prime is
  // valid, and with subs {T, F} the function is the T-element's prime.
  if (elements.size() == 1) return elements[0].sub;
  if (elements.size() == 2) {
    const Element &x = elements[0], &y = elements[1];
    if (x.sub == kTrue && y.sub == kFalse) return x.prime;
    if (x.sub == kFalse && y.sub == kTrue) return y.prime;
  }

  std::sort(elements.begin(), elements.end(), by_prime);
  return intern(v, elements);
}

bool Manager::is_consistent(NodeId a) {
  check_owned(a);
  if (a == kFalse) return false;
  if (!is_decision(a)) return true;
  if (consistent_.size() < nodes_.size()) consistent_.resize(nodes_.size(), -1);
  auto& slot = consistent_[index(a)];
  if (slot >= 0) return slot == 1;
  bool result = false;
  for (const auto& e : elements(a)) {
    if (e.sub != kFalse && is_consistent(e.prime) && is_consistent(e.sub)) {
      result = true;
      break;
    }
  }
  consistent_[index(a)] = result ? 1 : 0;
  return result;
}

NodeId Manager::negate(NodeId a) {
  check_owned(a);
  if (a == kFalse) return kTrue;
  if (a == kTrue) return kFalse;
  if (is_literal(a)) return literal(-literal_of(a));
  if (auto it = neg_cache_.find(index(a)); it != neg_cache_.end()) return it->second;

  auto src = elements(a);
  std::vector<Element> elems(src.begin(), src.end());
  for (auto& e : elems) e.sub = negate(e.sub);
  NodeId result = unique_decision(vtree_node(a), std::move(elems));
  neg_cache_[index(a)] = result;
  neg_cache_[index(result)] = a;
  return result;
}

NodeId Manager::condition(NodeId a, int signed_lit) {
  check_owned(a);
  if (signed_lit == 0) throw InputError("literal 0 is not a variable");
  Var x = signed_lit > 0 ? signed_lit : -signed_lit;
  Vtree::Id leaf = vtree_.leaf_of(x);

  std::unordered_map<std::uint32_t, NodeId> memo;
  auto rec = [&](auto&& self, NodeId n) -> NodeId {
    if (is_constant(n)) return n;
    if (is_literal(n)) {
      int l = literal_of(n);
      if (l == signed_lit) return kTrue;
      if (l == -signed_lit) return kFalse;
      return n;
    }
    Vtree::Id v = vtree_node(n);
    if (!vtree_.contains(v, leaf)) return n;
    if (auto it = memo.find(index(n)); it != memo.end()) return it->second;
    auto src = elements(n);
    std::vector<Element> elems(src.begin(), src.end());
    for (auto& e : elems) {
      e.prime = self(self, e.prime);
      e.sub = self(self, e.sub);
    }
    NodeId result = unique_decision(v, std::move(elems));
    memo.emplace(index(n), result);
    return result;
  };
  return rec(rec, a);
}

NodeId Manager::forget(NodeId a, Var x) {
  NodeId pos = condition(a, x);
  NodeId neg = condition(a, -x);
  return apply(pos, neg, Op::disjoin);
}

NodeId Manager::forget(NodeId a, std::span<const Var> vars) {
  std::vector<Var> order(vars.begin(), vars.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  for (Var x : order) a = forget(a, x);
  return a;
}

std::uint64_t Manager::size(NodeId root) {
  check_owned(root);
  if (!is_decision(root)) return 0;
  if (size_memo_.size() < nodes_.size()) size_memo_.resize(nodes_.size(), -1);
  if (size_memo_[index(root)] >= 0) return static_cast<std::uint64_t>(size_memo_[index(root)]);

  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeId> stack{root};
  std::uint64_t total = 0;
  seen.insert(index(root));
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    auto elems = elements(n);
    total += elems.size();
    for (const auto& e : elems) {
      for (NodeId c : {e.prime, e.sub})
        if (is_decision(c) && seen.insert(index(c)).second) stack.push_back(c);
    }
  }
  size_memo_[index(root)] = static_cast<std::int64_t>(total);
  return total;
}

std::uint64_t Manager::node_count(NodeId root) const {
  check_owned(root);
  std::unordered_set<std::uint32_t> seen{index(root)};
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (!is_decision(n)) continue;
    for (const auto& e : elements(n)) {
      for (NodeId c : {e.prime, e.sub})
        if (seen.insert(index(c)).second) stack.push_back(c);
    }
  }
  return seen.size();
}

}  // namespace sdd
