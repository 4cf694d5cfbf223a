#include "sdd/vtree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "sdd/errors.hpp"

namespace sdd {

namespace {

void check_order(std::span<const Var> order) {
  if (order.empty()) throw InputError("variable order is empty");
  std::vector<bool> seen(order.size() + 1, false);
  for (Var x : order) {
    if (x < 1 || x > static_cast<Var>(order.size()))
      throw InputError("variable order is not a permutation of 1..n: " + std::to_string(x));
    if (seen[x]) throw InputError("duplicate variable in order: " + std::to_string(x));
    seen[x] = true;
  }
}

VtreeBuilder::Handle balanced_block(VtreeBuilder& b, std::span<const Var> vars) {
  if (vars.size() == 1) return b.leaf(vars[0]);
  std::size_t split = (vars.size() + 1) / 2;
  auto left = balanced_block(b, vars.first(split));
  auto right = balanced_block(b, vars.subspan(split));
  return b.internal(left, right);
}

}  // namespace

VtreeBuilder::Handle VtreeBuilder::leaf(Var x) {
  protos_.push_back({x, -1, -1});
  return static_cast<Handle>(protos_.size() - 1);
}

VtreeBuilder::Handle VtreeBuilder::internal(Handle left, Handle right) {
  auto valid = [&](Handle h) { return h >= 0 && h < static_cast<Handle>(protos_.size()); };
  if (!valid(left) || !valid(right)) throw InputError("vtree child handle out of range");
  protos_.push_back({0, left, right});
  return static_cast<Handle>(protos_.size() - 1);
}

Vtree VtreeBuilder::build(Handle root) const {
  if (root < 0 || root >= static_cast<Handle>(protos_.size()))
    throw InputError("vtree root handle out of range");

  std::vector<int> uses(protos_.size(), 0);
  for (const auto& p : protos_) {
    if (p.var == 0) {
      ++uses[p.left];
      ++uses[p.right];
    }
  }

  Vtree t;
  std::vector<Vtree::Id> id_of(protos_.size(), Vtree::kNone);
  int leaves = 0;
  // Iterative in-order walk; vtrees over many variables can be very deep.
  std::vector<std::pair<Handle, bool>> stack{{root, false}};
  std::vector<Handle> order;
  while (!stack.empty()) {
    auto [h, expanded] = stack.back();
    stack.pop_back();
    const auto& p = protos_[h];
    if (p.var != 0 || expanded) {
      if (id_of[h] != Vtree::kNone) throw InputError("vtree node used more than once");
      id_of[h] = static_cast<Vtree::Id>(order.size());
      order.push_back(h);
      if (p.var != 0) ++leaves;
      continue;
    }
    if (uses[h] > 1 || (h != root && uses[h] == 0))
      throw InputError("vtree node used more than once");
    stack.push_back({p.right, false});
    stack.push_back({h, true});
    stack.push_back({p.left, false});
  }
  if (order.size() != protos_.size()) throw InputError("vtree has nodes unreachable from the root");

  t.nodes_.resize(order.size());
  t.leaf_of_var_.assign(leaves + 1, Vtree::kNone);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& p = protos_[order[i]];
    auto& n = t.nodes_[i];
    n.var = p.var;
    if (p.var != 0) {
      if (p.var < 1 || p.var > leaves)
        throw InputError("vtree variables must be exactly 1.." + std::to_string(leaves));
      if (t.leaf_of_var_[p.var] != Vtree::kNone)
        throw InputError("duplicate vtree variable " + std::to_string(p.var));
      t.leaf_of_var_[p.var] = static_cast<Vtree::Id>(i);
    } else {
      n.left = id_of[p.left];
      n.right = id_of[p.right];
    }
  }
  t.root_ = id_of[root];

  // Parents and subtree ranges, children before parents.
  std::vector<Vtree::Id> post;
  post.reserve(t.nodes_.size());
  std::vector<std::pair<Vtree::Id, bool>> walk{{t.root_, false}};
  while (!walk.empty()) {
    auto [v, done] = walk.back();
    walk.pop_back();
    if (done || t.nodes_[v].var != 0) {
      post.push_back(v);
      continue;
    }
    walk.push_back({v, true});
    walk.push_back({t.nodes_[v].right, false});
    walk.push_back({t.nodes_[v].left, false});
  }
  for (Vtree::Id v : post) {
    auto& n = t.nodes_[v];
    if (n.var != 0) {
      n.first = n.last = v;
    } else {
      t.nodes_[n.left].parent = v;
      t.nodes_[n.right].parent = v;
      n.first = t.nodes_[n.left].first;
      n.last = t.nodes_[n.right].last;
    }
  }
  return t;
}

Vtree Vtree::balanced(std::span<const Var> order) {
  check_order(order);
  VtreeBuilder b;
  return b.build(balanced_block(b, order));
}

Vtree Vtree::right_linear(std::span<const Var> order) {
  return bounded(order, 1);
}

Vtree Vtree::bounded(std::span<const Var> order, int k) {
  if (k <= 0) throw InputError("vtree bound must be positive");
  check_order(order);
  VtreeBuilder b;
  std::size_t block = static_cast<std::size_t>(k);
  // The final block absorbs the tail so the spine ends in a right child.
  std::vector<std::span<const Var>> blocks;
  std::size_t pos = 0;
  while (order.size() - pos > block) {
    blocks.push_back(order.subspan(pos, block));
    pos += block;
  }
  VtreeBuilder::Handle spine = balanced_block(b, order.subspan(pos));
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
    spine = b.internal(balanced_block(b, *it), spine);
  return b.build(spine);
}

const Vtree::Node& Vtree::node(Id v) const {
  if (v < 0 || v >= node_count()) throw InputError("vtree node id out of range: " + std::to_string(v));
  return nodes_[v];
}

Vtree::Id Vtree::leaf_of(Var x) const {
  if (x < 1 || x > var_count()) throw InputError("variable not in vtree: " + std::to_string(x));
  return leaf_of_var_[x];
}

std::vector<Var> Vtree::variables_under(Id v) const {
  std::vector<Var> vars;
  for (Id u = first(v); u <= last(v); u += 2) vars.push_back(nodes_[u].var);
  return vars;
}

Vtree::Id Vtree::lca(Id a, Id b) const {
  node(a);
  node(b);
  Id v = a;
  while (!contains(v, b)) v = nodes_[v].parent;
  return v;
}

bool Vtree::is_bounded(int k) const {
  for (Id v = 0; v < node_count(); ++v)
    if (!is_leaf(v) && vars_under(left(v)) > k) return false;
  return true;
}

bool Vtree::operator==(const Vtree& other) const {
  if (nodes_.size() != other.nodes_.size() || root_ != other.root_) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto &a = nodes_[i], &b = other.nodes_[i];
    if (a.var != b.var || a.left != b.left || a.right != b.right) return false;
  }
  return true;
}

std::string Vtree::serialize() const {
  std::ostringstream out;
  out << "vtree " << node_count() << '\n';
  std::function<void(Id)> emit = [&](Id v) {
    const auto& n = nodes_[v];
    if (n.var != 0) {
      out << "L " << v << ' ' << n.var << '\n';
      return;
    }
    emit(n.left);
    emit(n.right);
    out << "I " << v << ' ' << n.left << ' ' << n.right << '\n';
  };
  emit(root_);
  return out.str();
}

Vtree Vtree::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  long declared = -1;
  VtreeBuilder b;
  std::map<long, VtreeBuilder::Handle> handle_of;
  std::map<long, std::size_t> var_line;
  VtreeBuilder::Handle last = -1;

  auto parse_int = [&](const std::string& tok) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    return value;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "vtree") {
      if (declared >= 0) throw ParseError(lineno, "duplicate vtree header");
      if (tok.size() != 2) throw ParseError(lineno, "expected 'vtree <node-count>'");
      declared = parse_int(tok[1]);
      continue;
    }
    if (declared < 0) throw ParseError(lineno, "node line before 'vtree' header");
    if (tok[0] == "L" && tok.size() == 3) {
      long id = parse_int(tok[1]);
      long x = parse_int(tok[2]);
      if (handle_of.count(id)) throw ParseError(lineno, "duplicate node id " + tok[1]);
      if (x < 1) throw ParseError(lineno, "variable must be positive");
      if (auto [it, fresh] = var_line.emplace(x, lineno); !fresh)
        throw ParseError(lineno, "duplicate variable " + tok[2] + " (first on line " +
                                     std::to_string(it->second) + ")");
      last = handle_of[id] = b.leaf(static_cast<Var>(x));
    } else if (tok[0] == "I" && tok.size() == 4) {
      long id = parse_int(tok[1]);
      long l = parse_int(tok[2]);
      long r = parse_int(tok[3]);
      if (handle_of.count(id)) throw ParseError(lineno, "duplicate node id " + tok[1]);
      auto lit = handle_of.find(l), rit = handle_of.find(r);
      if (lit == handle_of.end() || rit == handle_of.end())
        throw ParseError(lineno, "child references an undefined node");
      last = handle_of[id] = b.internal(lit->second, rit->second);
    } else {
      throw ParseError(lineno, "unrecognized line '" + line + "'");
    }
  }
  if (declared < 0) throw ParseError(0, "missing 'vtree' header");
  if (last < 0) throw ParseError(0, "vtree has no nodes");
  if (static_cast<long>(handle_of.size()) != declared)
    throw ParseError(0, "header declares " + std::to_string(declared) + " nodes, found " +
                            std::to_string(handle_of.size()));
  try {
    return b.build(last);
  } catch (const InputError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace sdd
