#ifndef THRG_CNF_HPP
#define THRG_CNF_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "thrg/tree_decomposition.hpp"

namespace thrg {

/// Vertices of a node that its parent does not hold. For children of S this
/// is the whole bag.
inline Bag internal_vertices(const TreeDecomposition& t, NodeId id) {
  const auto& n = t[id];
  if (n.parent == kNoNode) return {};
  return detail::bag_difference(n.bag, t[n.parent].bag);
}

namespace detail {

inline bool prunable(const std::vector<TreeNode>& nodes, const TreeNode& n) {
  if (n.parent == kNoNode) return false;
  // A join below S keeps separate components together; it only goes once
  // it has a single child left.
  if (n.kind == NodeKind::join && n.children.size() >= 2) return false;
  return bag_subset(n.bag, nodes[n.parent].bag);
}

}  // namespace detail

/// Removes every non-root node that introduces no internal vertex, splicing
/// its children into its place under the parent and moving its terminal
/// edges to the parent. Repeats until nothing changes.
inline TreeDecomposition prune_cnf(const TreeDecomposition& t) {
  std::vector<TreeNode> nodes = t.nodes;
  std::vector<char> alive(nodes.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& n : nodes) {
      if (!alive[n.id] || !detail::prunable(nodes, n)) continue;
      auto& parent = nodes[n.parent];
      parent.terminals.insert(parent.terminals.end(), n.terminals.begin(), n.terminals.end());
      sort_unique(parent.terminals);
      auto pos = std::find(parent.children.begin(), parent.children.end(), n.id);
      pos = parent.children.erase(pos);
      parent.children.insert(pos, n.children.begin(), n.children.end());
      for (auto c : n.children) nodes[c].parent = parent.id;
      n.children.clear();
      n.terminals.clear();
      alive[n.id] = 0;
      changed = true;
    }
  }
  return detail::compact_tree(std::move(nodes), alive, t.root, t.ledger);
}

/// Gives every node at most two children. A node with children c1..cd (d > 2)
/// keeps c1 and a fresh copy of itself (same bag, no terminals) that takes
/// c2..cd; the copy is processed the same way.
inline TreeDecomposition binarize(const TreeDecomposition& t) {
  TreeDecomposition out = t;
  for (NodeId id = 0; id < out.nodes.size(); ++id) {
    if (out[id].children.size() <= 2) continue;
    TreeNode copy;
    copy.id = out.nodes.size();
    copy.bag = out[id].bag;
    copy.kind = NodeKind::copy;
    copy.marked = true;
    copy.parent = id;
    copy.children.assign(out[id].children.begin() + 1, out[id].children.end());
    for (auto c : copy.children) out[c].parent = copy.id;
    out[id].children.resize(1);
    out[id].children.push_back(copy.id);
    out.nodes.push_back(std::move(copy));  // visited later in this loop
  }
  return out;
}

/// Empty when t is in CNF; otherwise a description of the first offending node.
inline std::string cnf_violation(const TreeDecomposition& t) {
  for (const auto& n : t.nodes) {
    if (n.parent == kNoNode) continue;
    if (n.children.size() > 2)
      return "node " + std::to_string(n.id) + " has " + std::to_string(n.children.size()) + " children";
    if (internal_vertices(t, n.id).empty() && n.children.size() != 2)
      return "node " + std::to_string(n.id) + " has no internal vertex and " + std::to_string(n.children.size()) +
             " children";
  }
  return {};
}

inline bool is_cnf(const TreeDecomposition& t) { return cnf_violation(t).empty(); }

/// prune_cnf followed by binarize.
inline TreeDecomposition normalize_cnf(const TreeDecomposition& t) { return binarize(prune_cnf(t)); }

}  // namespace thrg

#endif  // THRG_CNF_HPP
