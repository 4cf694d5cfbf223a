#include <unordered_map>

#include "sdd/errors.hpp"
#include "sdd/manager.hpp"

namespace sdd {

NodeId reduce(const Manager& src, NodeId root, Manager& dst) {
  if (!(src.vtree() == dst.vtree())) throw InputError("reduce requires managers with identical vtrees");
  if (!src.owns(root)) throw InputError("node handle is not from the source manager");

  std::unordered_map<std::uint32_t, NodeId> memo;
  auto rec = [&](auto&& self, NodeId n) -> NodeId {
    if (src.is_constant(n)) return n;
    if (src.is_literal(n)) return dst.literal(src.literal_of(n));
    if (auto it = memo.find(index(n)); it != memo.end()) return it->second;
    std::vector<Element> elems;
    for (const auto& e : src.elements(n)) elems.push_back({self(self, e.prime), self(self, e.sub)});
    NodeId result = dst.unique_decision(src.vtree_node(n), std::move(elems));
    memo.emplace(index(n), result);
    return result;
  };
  return rec(rec, root);
}

}  // namespace sdd
