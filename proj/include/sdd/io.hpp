#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "sdd/manager.hpp"

namespace sdd {

// Text format, children before parents, root last:
//   sdd <node-count>
//   F <id> | T <id> | L <id> <vtree-id> <signed-literal>
//   D <id> <vtree-id> <k> <p1> <s1> ... <pk> <sk>
// Elements are emitted in a structural order and file ids in emission order,
// so equal SDDs write identical bytes from any manager.
void write_sdd(const Manager& m, NodeId root, std::ostream& out);
std::string write_sdd(const Manager& m, NodeId root);

// Rebuilds through unique_decision, so a compressed manager re-canonicalizes.
// Vtree ids refer to m's (in-order) vtree ids.
NodeId read_sdd(Manager& m, std::string_view text);

// Whole-file helpers used by the CLI; throw InputError when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace sdd
