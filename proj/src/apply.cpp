#include <algorithm>

#include "sdd/errors.hpp"
#include "sdd/manager.hpp"

namespace sdd {

namespace {

struct DepthGuard {
  int& depth;
  explicit DepthGuard(int& d) : depth(d) { ++depth; }
  ~DepthGuard() { --depth; }
};

std::uint64_t cache_key(NodeId a, NodeId b) {
  auto lo = std::min(index(a), index(b));
  auto hi = std::max(index(a), index(b));
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

}  // namespace

void Manager::check_deadline() {
  if (deadline_ && (stats_.recursive_calls & 0x3ff) == 0 &&
      std::chrono::steady_clock::now() > *deadline_)
    throw TimeoutError();
}

NodeId Manager::apply(NodeId a, NodeId b, Op op) {
  check_owned(a);
  check_owned(b);
  if (depth_ > 0 || !observer_) {
    DepthGuard guard(depth_);
    return apply_rec(a, b, op);
  }
  auto calls = stats_.recursive_calls;
  auto entries = stats_.cache_entries;
  NodeId result;
  {
    DepthGuard guard(depth_);
    result = apply_rec(a, b, op);
  }
  observer_(ApplyEvent{a, b, op, result, stats_.recursive_calls - calls,
                       stats_.cache_entries - entries});
  return result;
}

std::optional<NodeId> Manager::apply_base(NodeId a, NodeId b, Op op) const {
  if (a == b) return a;
  if (op == Op::conjoin) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
  } else {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
  }
  // Complementary literals of one variable.
  if (is_literal(a) && is_literal(b) && literal_of(a) == -literal_of(b))
    return op == Op::conjoin ? kFalse : kTrue;
  return std::nullopt;
}

// Pseudo-partition of n at vtree node v, where n respects v or a descendant.
std::vector<Element> Manager::lift(NodeId n, Vtree::Id v) {
  Vtree::Id u = vtree_node(n);
  if (u == v) {
    auto src = elements(n);
    return {src.begin(), src.end()};
  }
  if (u != Vtree::kNone && vtree_.in_left(v, u)) return {{n, kTrue}, {negate(n), kFalse}};
  return {{kTrue, n}};
}

NodeId Manager::apply_rec(NodeId a, NodeId b, Op op) {
  ++stats_.recursive_calls;
  check_deadline();
  if (auto base = apply_base(a, b, op)) return *base;

  ++stats_.cache_lookups;
  auto& cache = apply_cache_[static_cast<std::size_t>(op)];
  std::uint64_t key = cache_key(a, b);
  if (auto it = cache.find(key); it != cache.end()) {
    ++stats_.cache_hits;
    return it->second;
  }

  std::uint64_t calls_before = stats_.recursive_calls;
  std::uint64_t size_a = 0, size_b = 0;
  bool recording = false;
  if (ratio_threshold_) {
    size_a = size(a);
    size_b = size(b);
    recording = size_a * size_b > *ratio_threshold_;
  }

  Vtree::Id v = vtree_.lca(vtree_node(a), vtree_node(b));
  std::vector<Element> lhs = lift(a, v);
  std::vector<Element> rhs = lift(b, v);

  std::vector<Element> gamma;
  gamma.reserve(lhs.size() * rhs.size());
  for (const auto& [p, s] : lhs) {
    for (const auto& [q, r] : rhs) {
      NodeId prime = apply_rec(p, q, Op::conjoin);
      if (!prime_consistent(prime)) continue;
      gamma.push_back({prime, apply_rec(s, r, op)});
    }
  }
  NodeId result = unique_decision(v, std::move(gamma));

  cache.emplace(key, result);
  ++stats_.cache_entries;
  if (recording) {
    stats_.ratio_records.push_back(
        {size_a, size_b, size(result), stats_.recursive_calls - calls_before + 1});
  }
  return result;
}

}  // namespace sdd
