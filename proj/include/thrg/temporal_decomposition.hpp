#ifndef THRG_TEMPORAL_DECOMPOSITION_HPP
#define THRG_TEMPORAL_DECOMPOSITION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "thrg/clique.hpp"
#include "thrg/errors.hpp"
#include "thrg/random.hpp"
#include "thrg/temporal_graph.hpp"
#include "thrg/tree_decomposition.hpp"

namespace thrg {

/// What one clique extraction did, as seen at that moment. Later steps may
/// absorb the parent into a hub, so the final tree need not show it.
struct DecompositionStep {
  std::size_t bin = 0;
  Bag clique;
  Bag orphans;
  std::optional<Bag> hub;    // set when orphans existed and pending nodes were absorbed
  std::size_t absorbed = 0;  // pending nodes merged into the hub
  std::optional<Bag> parent; // bag of the new pending parent; empty optional means S
};

namespace detail {

class TemporalBuilder {
 public:
  explicit TemporalBuilder(const TemporalGraph& g) : residual_(g.num_vertices) {
    for (const auto& e : g.edges) {
      residual_[e.u].insert(e.v);
      residual_[e.v].insert(e.u);
    }
    TreeNode s;
    s.marked = true;
    s.kind = NodeKind::root;
    root_ = add(std::move(s));
  }

  // One clique extraction step: leaf, orphan handling, parent or hub.
  DecompositionStep process_clique(const Clique& c, std::size_t bin) {
    DecompositionStep step;
    step.bin = bin;
    step.clique = c.vertices;
    TreeNode leaf;
    leaf.bag = c.vertices;
    leaf.terminals = c.edges;
    leaf.bin = bin;
    leaf.marked = true;
    leaf.kind = NodeKind::clique_leaf;
    const NodeId leaf_id = add(std::move(leaf));

    for (const auto& e : c.edges) {
      residual_[e.u].erase(e.v);
      residual_[e.v].erase(e.u);
    }

    Bag orphans;
    for (auto v : c.vertices)
      if (residual_[v].empty()) orphans.push_back(v);
    step.orphans = orphans;

    if (orphans.empty()) {
      const NodeId parent = add_pending(c.vertices);
      link(parent, leaf_id);
      step.parent = c.vertices;
      return step;
    }

    // Absorb every pending (unmarked) node that touches an orphan.
    std::vector<NodeId> absorbed;
    for (const auto& entry : ledger_)
      if (!bag_intersection(nodes_[entry.node].bag, orphans).empty()) absorbed.push_back(entry.node);
    std::sort(absorbed.begin(), absorbed.end());

    NodeId hub = leaf_id;
    if (!absorbed.empty()) {
      TreeNode h;
      h.bag = c.vertices;
      h.marked = true;
      h.kind = NodeKind::hub;
      hub = add(std::move(h));
      link(hub, leaf_id);
      for (auto id : absorbed) {
        nodes_[hub].bag = bag_union(nodes_[hub].bag, nodes_[id].bag);
        for (auto child : nodes_[id].children) {
          nodes_[child].parent = kNoNode;
          link(hub, child);
        }
        alive_[id] = 0;
      }
      std::erase_if(ledger_, [&](const LedgerEntry& e) { return !alive_[e.node]; });
      step.hub = nodes_[hub].bag;
      step.absorbed = absorbed.size();
    }

    const Bag externals = bag_difference(nodes_[hub].bag, orphans);
    if (externals.empty()) {
      link(root_, hub);
    } else {
      link(add_pending(externals), hub);
      step.parent = externals;
    }
    return step;
  }

  TreeDecomposition finish() {
    // Pending nodes left over (none on well-formed input) hang below S.
    for (const auto& entry : ledger_) link(root_, entry.node);
    ledger_.clear();

    if (nodes_[root_].children.size() > 1) {
      TreeNode j;
      j.kind = NodeKind::join;
      j.marked = true;
      const NodeId join = add(std::move(j));
      const auto kids = nodes_[root_].children;
      nodes_[root_].children.clear();
      for (auto k : kids) {
        nodes_[k].parent = kNoNode;
        link(join, k);
      }
      link(root_, join);
    }
    return compact_tree(std::move(nodes_), alive_, root_);
  }

  StaticGraph residual_bin(const std::vector<Edge>& bin_edges) const {
    std::vector<Edge> remaining;
    for (const auto& e : bin_edges)
      if (residual_[e.u].count(e.v)) remaining.push_back(e);
    return StaticGraph(std::move(remaining));
  }

 private:
  NodeId add(TreeNode n) {
    n.id = nodes_.size();
    nodes_.push_back(std::move(n));
    alive_.push_back(1);
    return nodes_.back().id;
  }

  NodeId add_pending(const Bag& vertices) {
    TreeNode p;
    p.bag = vertices;
    p.kind = NodeKind::parent_nonterminal;
    p.marked = false;
    const NodeId id = add(std::move(p));
    ledger_.push_back(LedgerEntry{vertices, id});
    return id;
  }

  void link(NodeId parent, NodeId child) {
    nodes_[child].parent = parent;
    nodes_[parent].children.push_back(child);
  }

  std::vector<std::set<Vertex>> residual_;
  std::vector<TreeNode> nodes_;
  std::vector<char> alive_;
  std::vector<LedgerEntry> ledger_;
  NodeId root_ = kNoNode;
};

}  // namespace detail

/// Temporal tree decomposition by de-evolution: bins are processed from the
/// latest to the earliest, repeatedly extracting a maximum clique from the
/// residual edges of the bin. Each clique becomes a marked leaf. When the
/// clique's removal leaves vertices with no remaining edges (orphans), every
/// pending nonterminal touching an orphan is merged with the leaf into a hub
/// whose parent carries the surviving (external) vertices, or S when none
/// survive. Otherwise the leaf gets a pending parent over its own vertices.
///
/// The RNG is consumed only for ties between maximum cliques, bins descending
/// and cliques in extraction order. When `trace` is given, one entry per
/// extracted clique is appended to it.
inline TreeDecomposition temporal_tree_decomposition(const TemporalGraph& g, Rng& rng,
                                                     std::vector<DecompositionStep>* trace = nullptr) {
  if (g.edges.empty()) throw ArgumentError("temporal graph has no edges");
  std::vector<std::vector<Edge>> by_bin(g.num_bins() + 1);
  for (const auto& e : g.edges) {
    if (e.bin < 1) throw ArgumentError("temporal graph edge without a bin");
    if (e.bin >= by_bin.size()) by_bin.resize(e.bin + 1);
    by_bin[e.bin].push_back(Edge{e.u, e.v});
  }

  detail::TemporalBuilder builder(g);
  for (std::size_t bin = by_bin.size() - 1; bin >= 1; --bin) {
    for (;;) {
      const auto residual = builder.residual_bin(by_bin[bin]);
      if (residual.num_edges() == 0) break;
      auto step = builder.process_clique(extract_max_clique(residual, rng), bin);
      if (trace) trace->push_back(std::move(step));
    }
  }
  return builder.finish();
}

}  // namespace thrg

#endif  // THRG_TEMPORAL_DECOMPOSITION_HPP
