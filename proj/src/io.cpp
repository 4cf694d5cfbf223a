#include "sdd/io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sdd/errors.hpp"

namespace sdd {

namespace {

// Structural rank of every node reachable from root. Nodes are ranked by
// height, then by (kind, vtree, literal, sorted child ranks), so the ranks,
// and hence the file, do not depend on handle numbering.
std::unordered_map<std::uint32_t, std::size_t> structural_ranks(const Manager& m, NodeId root) {
  std::unordered_map<std::uint32_t, int> height;
  std::vector<NodeId> post;
  std::vector<std::pair<NodeId, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (height.count(index(n))) continue;
    if (!m.is_decision(n) || expanded) {
      int h = 0;
      if (m.is_decision(n))
        for (const auto& e : m.elements(n)) h = std::max({h, height.at(index(e.prime)) + 1, height.at(index(e.sub)) + 1});
      height.emplace(index(n), h);
      post.push_back(n);
      continue;
    }
    stack.push_back({n, true});
    for (const auto& e : m.elements(n)) {
      stack.push_back({e.prime, false});
      stack.push_back({e.sub, false});
    }
  }

  using Key = std::vector<long long>;
  std::map<int, std::vector<std::pair<Key, NodeId>>> levels;
  std::unordered_map<std::uint32_t, std::size_t> rank;
  for (NodeId n : post) levels[height.at(index(n))].push_back({{}, n});
  std::size_t next = 0;
  for (auto& [h, nodes] : levels) {
    for (auto& [key, n] : nodes) {
      key = {static_cast<long long>(m.kind(n)), m.vtree_node(n), m.is_literal(n) ? m.literal_of(n) : 0};
      std::vector<std::pair<std::size_t, std::size_t>> kids;
      if (m.is_decision(n))
        for (const auto& e : m.elements(n)) kids.emplace_back(rank.at(index(e.prime)), rank.at(index(e.sub)));
      std::sort(kids.begin(), kids.end());
      for (auto [p, s] : kids) {
        key.push_back(static_cast<long long>(p));
        key.push_back(static_cast<long long>(s));
      }
    }
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, n] : nodes) rank.emplace(index(n), next++);
  }
  return rank;
}

}  // namespace

void write_sdd(const Manager& m, NodeId root, std::ostream& out) {
  if (!m.owns(root)) throw InputError("node handle is not from this manager");
  auto rank = structural_ranks(m, root);
  std::unordered_map<std::uint32_t, std::size_t> file_id;
  std::ostringstream body;

  auto emit = [&](auto&& self, NodeId n) -> std::size_t {
    if (auto it = file_id.find(index(n)); it != file_id.end()) return it->second;
    if (m.is_decision(n)) {
      std::vector<Element> elems(m.elements(n).begin(), m.elements(n).end());
      std::sort(elems.begin(), elems.end(), [&](const Element& a, const Element& b) {
        return std::pair(rank.at(index(a.prime)), rank.at(index(a.sub))) <
               std::pair(rank.at(index(b.prime)), rank.at(index(b.sub)));
      });
      std::vector<std::pair<std::size_t, std::size_t>> kids;
      for (const auto& e : elems) {
        std::size_t p = self(self, e.prime);
        std::size_t s = self(self, e.sub);
        kids.emplace_back(p, s);
      }
      std::size_t id = file_id.size();
      file_id.emplace(index(n), id);
      body << "D " << id << ' ' << m.vtree_node(n) << ' ' << kids.size();
      for (auto [p, s] : kids) body << ' ' << p << ' ' << s;
      body << '\n';
      return id;
    }
    std::size_t id = file_id.size();
    file_id.emplace(index(n), id);
    if (n == kFalse)
      body << "F " << id;
    else if (n == kTrue)
      body << "T " << id;
    else
      body << "L " << id << ' ' << m.vtree_node(n) << ' ' << m.literal_of(n);
    body << '\n';
    return id;
  };
  emit(emit, root);
  out << "sdd " << file_id.size() << '\n' << body.str();
}

std::string write_sdd(const Manager& m, NodeId root) {
  std::ostringstream out;
  write_sdd(m, root, out);
  return out.str();
}

NodeId read_sdd(Manager& m, std::string_view text) {
  const Vtree& t = m.vtree();
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  long declared = -1;
  std::unordered_map<long, NodeId> node_of;
  std::optional<NodeId> last;

  auto to_long = [&](const std::string& tok) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    return value;
  };
  auto lookup = [&](long id) {
    auto it = node_of.find(id);
    if (it == node_of.end()) throw ParseError(lineno, "reference to undefined node " + std::to_string(id));
    return it->second;
  };
  auto vtree_id = [&](long v) {
    if (v < 0 || v >= t.node_count()) throw ParseError(lineno, "vtree id " + std::to_string(v) + " out of range");
    return static_cast<Vtree::Id>(v);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "sdd") {
      if (declared >= 0) throw ParseError(lineno, "duplicate sdd header");
      if (tok.size() != 2) throw ParseError(lineno, "expected 'sdd <node-count>'");
      declared = to_long(tok[1]);
      continue;
    }
    if (declared < 0) throw ParseError(lineno, "node line before 'sdd' header");
    if (tok.size() < 2) throw ParseError(lineno, "unrecognized line '" + line + "'");
    long id = to_long(tok[1]);
    if (node_of.count(id)) throw ParseError(lineno, "duplicate node id " + tok[1]);

    NodeId n;
    if ((tok[0] == "F" || tok[0] == "T") && tok.size() == 2) {
      n = tok[0] == "T" ? kTrue : kFalse;
    } else if (tok[0] == "L" && tok.size() == 4) {
      Vtree::Id v = vtree_id(to_long(tok[2]));
      long lit = to_long(tok[3]);
      if (lit == 0 || lit > t.var_count() || -lit > t.var_count())
        throw ParseError(lineno, "literal " + tok[3] + " not in vtree");
      if (t.leaf_of(static_cast<Var>(lit > 0 ? lit : -lit)) != v)
        throw ParseError(lineno, "literal does not respect vtree node " + tok[2]);
      n = m.literal(static_cast<int>(lit));
    } else if (tok[0] == "D" && tok.size() >= 4) {
      Vtree::Id v = vtree_id(to_long(tok[2]));
      if (t.is_leaf(v)) throw ParseError(lineno, "decision node on vtree leaf " + tok[2]);
      long k = to_long(tok[3]);
      if (k < 1 || tok.size() != static_cast<std::size_t>(4 + 2 * k))
        throw ParseError(lineno, "element count does not match the line");
      std::vector<Element> elems;
      for (long i = 0; i < k; ++i) {
        NodeId p = lookup(to_long(tok[4 + 2 * i]));
        NodeId s = lookup(to_long(tok[5 + 2 * i]));
        Vtree::Id pv = m.vtree_node(p), sv = m.vtree_node(s);
        if (pv != Vtree::kNone && !t.in_left(v, pv))
          throw ParseError(lineno, "prime does not respect the left subtree");
        if (sv != Vtree::kNone && !t.in_right(v, sv))
          throw ParseError(lineno, "sub does not respect the right subtree");
        elems.push_back({p, s});
      }
      try {
        n = m.unique_decision(v, std::move(elems));
      } catch (const InternalError& e) {
        throw ParseError(lineno, e.what());
      }
    } else {
      throw ParseError(lineno, "unrecognized line '" + line + "'");
    }
    node_of.emplace(id, n);
    last = n;
  }
  if (declared < 0) throw ParseError(0, "missing 'sdd' header");
  if (!last) throw ParseError(0, "sdd file has no nodes");
  if (static_cast<long>(node_of.size()) != declared)
    throw ParseError(0, "header declares " + std::to_string(declared) + " nodes, found " +
                            std::to_string(node_of.size()));
  return *last;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace sdd
