#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdd {

// Propositional variables are numbered from 1.
using Var = int;

// Full binary tree whose leaves are the variables 1..var_count.
//
// Node ids are dense and assigned in in-order, so the subtree rooted at v
// occupies the contiguous id range [first(v), last(v)], its left subtree is
// [first(v), v) and its right subtree is (v, last(v)]. Leaves and internal
// nodes alternate in in-order, so a subtree of s nodes has (s + 1) / 2 leaves.
//
// Immutable after construction.
class Vtree {
 public:
  using Id = int;
  static constexpr Id kNone = -1;

  // Leaf order equals `order`; splits at ceil(n/2), left-heavy.
  static Vtree balanced(std::span<const Var> order);
  // Every internal node's left child is a leaf.
  static Vtree right_linear(std::span<const Var> order);
  // Right spine whose left children are balanced blocks of at most k
  // consecutive variables.
  static Vtree bounded(std::span<const Var> order, int k);

  // Line-oriented text format; see README. Ids are renumbered to in-order.
  static Vtree parse(std::string_view text);
  // Emits children before parents (post-order) with in-order ids.
  std::string serialize() const;

  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  int var_count() const noexcept { return (node_count() + 1) / 2; }
  Id root() const noexcept { return root_; }

  bool is_leaf(Id v) const { return node(v).var != 0; }
  Var var(Id v) const { return node(v).var; }
  Id left(Id v) const { return node(v).left; }
  Id right(Id v) const { return node(v).right; }
  Id parent(Id v) const { return node(v).parent; }
  Id leaf_of(Var x) const;

  Id first(Id v) const { return node(v).first; }
  Id last(Id v) const { return node(v).last; }
  int vars_under(Id v) const { return (last(v) - first(v)) / 2 + 1; }
  std::vector<Var> variables_under(Id v) const;

  // u lies in the subtree rooted at v (u == v included).
  bool contains(Id v, Id u) const { return first(v) <= u && u <= last(v); }
  bool in_left(Id v, Id u) const { return first(v) <= u && u < v; }
  bool in_right(Id v, Id u) const { return v < u && u <= last(v); }

  // Deepest node whose subtree contains both a and b.
  Id lca(Id a, Id b) const;

  // Every internal node's left subtree has at most k variables.
  bool is_bounded(int k) const;

  bool operator==(const Vtree& other) const;

 private:
  friend class VtreeBuilder;

  struct Node {
    Var var = 0;  // 0 for internal nodes
    Id left = kNone;
    Id right = kNone;
    Id parent = kNone;
    Id first = 0;
    Id last = 0;
  };

  const Node& node(Id v) const;

  std::vector<Node> nodes_;
  std::vector<Id> leaf_of_var_;  // index by variable
  Id root_ = kNone;
};

// Assembles a vtree from arbitrary handles, then renumbers nodes in-order.
class VtreeBuilder {
 public:
  using Handle = int;

  Handle leaf(Var x);
  Handle internal(Handle left, Handle right);
  // Validates: single root, every handle used once, variables exactly 1..n.
  Vtree build(Handle root) const;

 private:
  struct Proto {
    Var var = 0;
    Handle left = -1;
    Handle right = -1;
  };
  std::vector<Proto> protos_;
};

}  // namespace sdd
