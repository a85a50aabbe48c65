#ifndef THRG_TREE_DECOMPOSITION_HPP
#define THRG_TREE_DECOMPOSITION_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "thrg/graph.hpp"

namespace thrg {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Sorted vertex set.
using Bag = std::vector<Vertex>;

enum class NodeKind {
  clique_leaf,         // terminal edges of one extracted clique
  hub,                 // orphan-absorbing merge node
  parent_nonterminal,  // pending nonterminal, unmarked
  root,                // the starting nonterminal S (empty bag)
  copy,                // binarization copy
  join,                // joins the subtrees of separate components below S
  bag,                 // plain bag of a static decomposition
};

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::clique_leaf: return "clique-leaf";
    case NodeKind::hub: return "hub";
    case NodeKind::parent_nonterminal: return "parent-nonterminal";
    case NodeKind::root: return "root-S";
    case NodeKind::copy: return "copy";
    case NodeKind::join: return "join";
    case NodeKind::bag: return "bag";
  }
  return "?";
}

struct TreeNode {
  NodeId id = 0;
  Bag bag;
  std::vector<Edge> terminals;  // sorted, endpoints inside bag
  std::optional<std::size_t> bin;
  bool marked = false;
  NodeKind kind = NodeKind::bag;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;  // ordered
};

/// Pending nonterminal: a vertex tuple and the tree node that will expand it.
struct LedgerEntry {
  Bag vertices;
  NodeId node = kNoNode;
};

/// Rooted tree of bags. Node ids equal their index in `nodes`; the root is the
/// empty-bag S node.
struct TreeDecomposition {
  std::vector<TreeNode> nodes;
  NodeId root = kNoNode;
  std::vector<LedgerEntry> ledger;

  std::size_t size() const noexcept { return nodes.size(); }
  const TreeNode& operator[](NodeId id) const { return nodes[id]; }
  TreeNode& operator[](NodeId id) { return nodes[id]; }

  /// Pre-order traversal from the root, children in stored order.
  std::vector<NodeId> preorder() const {
    std::vector<NodeId> out;
    if (root == kNoNode) return out;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      const auto id = stack.back();
      stack.pop_back();
      out.push_back(id);
      const auto& ch = nodes[id].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }
};

namespace detail {

inline Bag bag_intersection(const Bag& a, const Bag& b) {
  Bag out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Bag bag_difference(const Bag& a, const Bag& b) {
  Bag out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Bag bag_union(const Bag& a, const Bag& b) {
  Bag out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool bag_subset(const Bag& a, const Bag& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Keeps only nodes flagged alive, renumbering ids in their current order.
inline TreeDecomposition compact_tree(std::vector<TreeNode> nodes, const std::vector<char>& alive, NodeId root,
                                      std::vector<LedgerEntry> ledger = {}) {
  std::vector<NodeId> remap(nodes.size(), kNoNode);
  NodeId next = 0;
  for (NodeId i = 0; i < nodes.size(); ++i)
    if (alive[i]) remap[i] = next++;
  TreeDecomposition t;
  t.nodes.reserve(next);
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (!alive[i]) continue;
    TreeNode n = std::move(nodes[i]);
    n.id = remap[i];
    n.parent = n.parent == kNoNode ? kNoNode : remap[n.parent];
    for (auto& c : n.children) c = remap[c];
    t.nodes.push_back(std::move(n));
  }
  t.root = root == kNoNode ? kNoNode : remap[root];
  for (auto& entry : ledger) {
    if (entry.node != kNoNode && alive[entry.node]) {
      entry.node = remap[entry.node];
      t.ledger.push_back(std::move(entry));
    }
  }
  return t;
}

}  // namespace detail

struct Width {
  int value = 0;
  bool degenerate = false;  // only the empty root bag exists; value reported as 0
};

/// max(|bag| - 1) over all nodes.
inline Width width(const TreeDecomposition& t) {
  std::size_t largest = 0;
  for (const auto& n : t.nodes) largest = std::max(largest, n.bag.size());
  if (largest == 0) return Width{0, true};
  return Width{static_cast<int>(largest) - 1, false};
}

struct ValidityReport {
  bool vertex_cover = true;
  bool edge_cover = true;
  bool running_intersection = true;
  bool tree_shape = true;
  std::vector<Vertex> uncovered_vertices;
  std::vector<Edge> uncovered_edges;
  std::vector<Vertex> disconnected_vertices;  // vertices whose bags do not form a subtree
  std::string shape_problem;

  bool valid() const noexcept { return vertex_cover && edge_cover && running_intersection && tree_shape; }

  std::string describe() const {
    std::ostringstream os;
    os << "vertex-cover=" << (vertex_cover ? "pass" : "FAIL") << " edge-cover=" << (edge_cover ? "pass" : "FAIL")
       << " running-intersection=" << (running_intersection ? "pass" : "FAIL")
       << " tree=" << (tree_shape ? "pass" : "FAIL");
    if (!uncovered_vertices.empty()) os << " missing-vertex=" << uncovered_vertices.front();
    if (!uncovered_edges.empty()) os << " missing-edge=" << uncovered_edges.front().u << '-' << uncovered_edges.front().v;
    if (!disconnected_vertices.empty()) os << " disconnected-vertex=" << disconnected_vertices.front();
    if (!shape_problem.empty()) os << " shape: " << shape_problem;
    return os.str();
  }
};

/// Checks the three tree-decomposition properties of `t` against `g`, plus
/// that parent/child links form a single tree rooted at t.root.
inline ValidityReport validate_tree_decomposition(const TreeDecomposition& t, const StaticGraph& g) {
  ValidityReport report;

  if (t.root == kNoNode || t.root >= t.size()) {
    report.tree_shape = false;
    report.shape_problem = "missing root";
  } else {
    std::vector<char> seen(t.size(), 0);
    for (auto id : t.preorder()) {
      if (seen[id]) {
        report.tree_shape = false;
        report.shape_problem = "node " + std::to_string(id) + " reached twice";
        break;
      }
      seen[id] = 1;
      for (auto c : t[id].children)
        if (t[c].parent != id) {
          report.tree_shape = false;
          report.shape_problem = "node " + std::to_string(c) + " has inconsistent parent";
        }
    }
    if (report.tree_shape && std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(t.size())) {
      report.tree_shape = false;
      report.shape_problem = "nodes unreachable from root";
    }
  }

  // Which nodes hold each vertex.
  std::map<Vertex, std::vector<NodeId>> holders;
  for (const auto& n : t.nodes)
    for (auto v : n.bag) holders[v].push_back(n.id);

  for (auto v : g.vertices())
    if (!holders.count(v)) {
      report.vertex_cover = false;
      report.uncovered_vertices.push_back(v);
    }

  for (const auto& e : g.edges()) {
    bool covered = false;
    auto it = holders.find(e.u);
    if (it != holders.end())
      for (auto id : it->second)
        if (sorted_contains(t[id].bag, e.v)) {
          covered = true;
          break;
        }
    if (!covered) {
      report.edge_cover = false;
      report.uncovered_edges.push_back(e);
    }
  }

  // A set of nodes forms a subtree iff exactly one of them has a parent outside it.
  if (report.tree_shape) {
    for (const auto& [v, ids] : holders) {
      std::size_t tops = 0;
      for (auto id : ids) {
        const auto p = t[id].parent;
        if (p == kNoNode || !sorted_contains(t[p].bag, v)) ++tops;
      }
      if (tops != 1) {
        report.running_intersection = false;
        report.disconnected_vertices.push_back(v);
      }
    }
  }
  return report;
}

/// Every terminal edge of the tree, in node order.
inline std::vector<Edge> all_terminals(const TreeDecomposition& t) {
  std::vector<Edge> out;
  for (const auto& n : t.nodes) out.insert(out.end(), n.terminals.begin(), n.terminals.end());
  return out;
}

/// One line per node: "id parent kind bin bag={..} terms={..} marked|unmarked".
inline void dump(std::ostream& out, const TreeDecomposition& t) {
  for (const auto& n : t.nodes) {
    out << n.id << ' ';
    if (n.parent == kNoNode)
      out << '-';
    else
      out << n.parent;
    out << ' ' << to_string(n.kind) << ' ';
    if (n.bin)
      out << *n.bin;
    else
      out << '-';
    out << " bag={";
    for (std::size_t i = 0; i < n.bag.size(); ++i) out << (i ? "," : "") << n.bag[i];
    out << "} terms={";
    for (std::size_t i = 0; i < n.terminals.size(); ++i)
      out << (i ? "," : "") << n.terminals[i].u << '-' << n.terminals[i].v;
    out << "} " << (n.marked ? "marked" : "unmarked") << '\n';
  }
}

}  // namespace thrg

#endif  // THRG_TREE_DECOMPOSITION_HPP
