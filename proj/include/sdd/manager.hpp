#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdd/vtree.hpp"

namespace sdd {

// Handle to a node owned by a Manager. Handles are only meaningful together
// with the manager that issued them.
enum class NodeId : std::uint32_t {};

inline constexpr NodeId kFalse{0};
inline constexpr NodeId kTrue{1};

constexpr std::uint32_t index(NodeId n) noexcept { return static_cast<std::uint32_t>(n); }

enum class NodeKind : std::uint8_t { false_const, true_const, literal, decision };

// compressed: every stored partition has distinct subs (reduced SDDs).
// uncompressed: partitions are kept as Apply produces them.
enum class Mode : std::uint8_t { compressed, uncompressed };

enum class Op : std::uint8_t { conjoin, disjoin };

// A (prime, sub) pair; denotes prime AND sub.
struct Element {
  NodeId prime;
  NodeId sub;

  friend bool operator==(const Element&, const Element&) = default;
};

// A non-trivial Apply invocation whose operand size product exceeded the
// recording threshold.
struct RatioRecord {
  std::uint64_t size_a = 0;
  std::uint64_t size_b = 0;
  std::uint64_t size_out = 0;
  std::uint64_t calls = 0;  // recursive Apply calls spent inside this invocation
};

struct Stats {
  std::uint64_t recursive_calls = 0;  // every Apply invocation, base cases included
  std::uint64_t cache_lookups = 0;    // invocations that got past the base cases
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_entries = 0;    // results inserted into the Apply cache
  std::vector<RatioRecord> ratio_records;
};

// Summary of one top-level Apply call, reported to the apply observer.
struct ApplyEvent {
  NodeId a;
  NodeId b;
  Op op;
  NodeId result;
  std::uint64_t recursive_calls;
  std::uint64_t cache_entries;
};

// Owns the vtree, the node store with its unique table, and the Apply and
// negation caches. Nodes are never freed while the manager lives.
//
// Not thread-safe; confine each manager to one thread at a time.
class Manager {
 public:
  explicit Manager(Vtree vtree, Mode mode = Mode::compressed);

  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;
  // The unique table's hasher points back into this object.
  Manager(Manager&&) = delete;
  Manager& operator=(Manager&&) = delete;

  const Vtree& vtree() const noexcept { return vtree_; }
  Mode mode() const noexcept { return mode_; }

  // -- construction ------------------------------------------------------

  NodeId constant(bool value) const noexcept { return value ? kTrue : kFalse; }
  NodeId literal(Var x, bool positive);
  // DIMACS-style signed literal.
  NodeId literal(int signed_lit);

  // Canonical constructor for a decision node respecting vtree node v.
  // Drops elements with false (inconsistent) primes, compresses in
  // compressed mode, trims {(T,a)} and {(a,T),(~a,F)} down to a, and
  // hash-conses the sorted element list.
  NodeId unique_decision(Vtree::Id v, std::vector<Element> elements);

  // Merges elements sharing a sub by disjoining their primes. The result is
  // sorted by sub handle.
  std::vector<Element> compress(std::vector<Element> elements);

  // Stores a decision node exactly as given: no filtering, compression,
  // trimming or validity checks. For building malformed inputs in tests.
  NodeId unchecked_decision(Vtree::Id v, std::vector<Element> elements);

  // -- transformations -----------------------------------------------------

  NodeId apply(NodeId a, NodeId b, Op op);
  NodeId conjoin(NodeId a, NodeId b) { return apply(a, b, Op::conjoin); }
  NodeId disjoin(NodeId a, NodeId b) { return apply(a, b, Op::disjoin); }
  NodeId negate(NodeId a);
  NodeId condition(NodeId a, int signed_lit);
  // Exists x. a, computed as a|x OR a|~x.
  NodeId forget(NodeId a, Var x);
  // Folds single-variable forgetting in ascending variable order.
  NodeId forget(NodeId a, std::span<const Var> vars);

  // Satisfiability of the function a denotes. Memoized per node; polytime.
  bool is_consistent(NodeId a);

  // -- inspection ----------------------------------------------------------

  NodeKind kind(NodeId n) const { return data(n).kind; }
  bool is_constant(NodeId n) const { return n == kFalse || n == kTrue; }
  bool is_literal(NodeId n) const { return kind(n) == NodeKind::literal; }
  bool is_decision(NodeId n) const { return kind(n) == NodeKind::decision; }
  // Signed literal of a literal node.
  int literal_of(NodeId n) const;
  // Vtree node respected by n; Vtree::kNone for constants.
  Vtree::Id vtree_node(NodeId n) const { return data(n).vtree; }
  std::span<const Element> elements(NodeId n) const;

  // Sum of element counts over distinct decision nodes reachable from root.
  std::uint64_t size(NodeId root);
  // Distinct nodes reachable from root, constants and literals included.
  std::uint64_t node_count(NodeId root) const;
  // Nodes currently stored, both constants included.
  std::size_t stored_nodes() const noexcept { return nodes_.size(); }
  bool owns(NodeId n) const noexcept { return index(n) < nodes_.size(); }

  // -- instrumentation -----------------------------------------------------

  const Stats& stats() const noexcept { return stats_; }
  Stats snapshot_stats() const { return stats_; }
  void reset_stats() { stats_ = Stats{}; }

  // Record a RatioRecord for every computed (non-base, non-cached) Apply
  // whose operand sizes multiply to more than threshold. nullopt disables.
  void record_ratios(std::optional<std::uint64_t> threshold) { ratio_threshold_ = threshold; }

  // Called after each top-level Apply returns.
  void set_apply_observer(std::function<void(const ApplyEvent&)> observer) {
    observer_ = std::move(observer);
  }

  // Operations throw TimeoutError once the deadline passes.
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    deadline_ = deadline;
  }

 private:
  struct NodeData {
    NodeKind kind;
    Vtree::Id vtree;
    int lit;  // signed literal for literal nodes
    std::uint32_t begin;
    std::uint32_t count;
  };

  struct DecisionHash {
    const Manager* m;
    using is_transparent = void;
    std::size_t operator()(NodeId n) const;
    std::size_t operator()(const std::pair<Vtree::Id, std::span<const Element>>& key) const;
  };
  struct DecisionEq {
    const Manager* m;
    using is_transparent = void;
    bool operator()(NodeId a, NodeId b) const;
    bool operator()(const std::pair<Vtree::Id, std::span<const Element>>& key, NodeId n) const;
    bool operator()(NodeId n, const std::pair<Vtree::Id, std::span<const Element>>& key) const {
      return (*this)(key, n);
    }
  };

  static std::size_t hash_key(Vtree::Id v, std::span<const Element> elems);

  const NodeData& data(NodeId n) const;
  NodeId intern(Vtree::Id v, std::vector<Element>& sorted);
  NodeId store(Vtree::Id v, std::span<const Element> elements);

  NodeId apply_rec(NodeId a, NodeId b, Op op);
  std::optional<NodeId> apply_base(NodeId a, NodeId b, Op op) const;
  std::vector<Element> lift(NodeId n, Vtree::Id v);
  bool prime_consistent(NodeId p);
  void check_deadline();
  void check_owned(NodeId n) const;

  Vtree vtree_;
  Mode mode_;

  std::vector<NodeData> nodes_;
  std::vector<Element> pool_;
  std::vector<std::array<NodeId, 2>> literal_ids_;  // [var][positive]
  std::unordered_set<NodeId, DecisionHash, DecisionEq> unique_;

  std::array<std::unordered_map<std::uint64_t, NodeId>, 2> apply_cache_;  // per Op
  std::unordered_map<std::uint32_t, NodeId> neg_cache_;
  std::vector<std::int8_t> consistent_;  // -1 unknown
  std::vector<std::int64_t> size_memo_;  // -1 unknown

  Stats stats_;
  std::optional<std::uint64_t> ratio_threshold_;
  std::function<void(const ApplyEvent&)> observer_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  int depth_ = 0;
};

// Rebuilds root (from a manager of either mode) bottom-up inside dst, which
// must carry an identical vtree. With a compressed dst the result is the
// reduced SDD of the same function.
NodeId reduce(const Manager& src, NodeId root, Manager& dst);

struct Violation {
  NodeId node;
  std::string what;
};

// Structural audit of the SDD rooted at root: vtree respect, trimming,
// compression (compressed mode only) and, when the vtree has at most 16
// variables, partition semantics by truth table. Empty means valid.
std::vector<Violation> validate(const Manager& m, NodeId root);

}  // namespace sdd
