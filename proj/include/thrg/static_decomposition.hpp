#ifndef THRG_STATIC_DECOMPOSITION_HPP
#define THRG_STATIC_DECOMPOSITION_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/graph.hpp"
#include "thrg/tree_decomposition.hpp"

namespace thrg {

/// Greedy min-fill elimination order (ties: fewest remaining neighbours, then
/// lowest vertex id). Returns vertex ids in elimination order.
inline std::vector<Vertex> min_fill_order(const StaticGraph& g) {
  const auto c = compact(g);
  const std::size_t n = c.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : c.adj[v]) adj[v][w] = 1;
  for (std::size_t v = 0; v < n; ++v) nbrs[v] = c.adj[v];

  std::vector<char> eliminated(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::size_t fill = 0;
      const auto& nv = nbrs[v];
      for (std::size_t i = 0; i < nv.size(); ++i)
        for (std::size_t j = i + 1; j < nv.size(); ++j)
          if (!adj[nv[i]][nv[j]]) ++fill;
      if (fill < best_fill || (fill == best_fill && nv.size() < nbrs[best].size())) {
        best = v;
        best_fill = fill;
      }
    }
    const auto nv = nbrs[best];
    for (std::size_t i = 0; i < nv.size(); ++i)
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        const auto a = nv[i], b = nv[j];
        if (!adj[a][b]) {
          adj[a][b] = adj[b][a] = 1;
          nbrs[a].insert(std::lower_bound(nbrs[a].begin(), nbrs[a].end(), b), b);
          nbrs[b].insert(std::lower_bound(nbrs[b].begin(), nbrs[b].end(), a), a);
        }
      }
    for (auto w : nv) {
      adj[w][best] = adj[best][w] = 0;
      nbrs[w].erase(std::lower_bound(nbrs[w].begin(), nbrs[w].end(), static_cast<std::uint32_t>(best)));
    }
    nbrs[best].clear();
    eliminated[best] = 1;
    order.push_back(c.labels[best]);
  }
  return order;
}

/// Tree decomposition from an elimination order: the bag of v is v plus its
/// neighbours at elimination time, and its parent is the bag of the earliest
/// eliminated of those neighbours. Each edge goes to the bag of whichever
/// endpoint is eliminated first. Component roots hang below S (through a join
/// node when there are several components).
inline TreeDecomposition decomposition_from_order(const StaticGraph& g, const std::vector<Vertex>& order) {
  if (g.empty()) throw ArgumentError("cannot decompose an empty graph");
  const auto c = compact(g);
  const std::size_t n = c.size();
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(c.labels.begin(), c.labels.end(), v) - c.labels.begin());
  };
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < order.size(); ++i) position[index(order[i])] = i;

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : c.adj[v]) adj[v][w] = 1;

  // Node 0 is S, node i+1 is the bag of order[i].
  std::vector<TreeNode> nodes(n + 1);
  nodes[0].kind = NodeKind::root;
  nodes[0].marked = true;
  std::vector<std::vector<std::uint32_t>> later(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = index(order[i]);
    auto& node = nodes[i + 1];
    node.id = i + 1;
    node.kind = NodeKind::bag;
    node.marked = true;
    node.bag.push_back(c.labels[v]);
    std::size_t parent_pos = n;
    std::vector<std::uint32_t> nv;
    for (std::size_t w = 0; w < n; ++w)
      if (adj[v][w] && position[w] > i) nv.push_back(static_cast<std::uint32_t>(w));
    for (auto w : nv) {
      node.bag.push_back(c.labels[w]);
      parent_pos = std::min(parent_pos, position[w]);
    }
    std::sort(node.bag.begin(), node.bag.end());
    for (std::size_t a = 0; a < nv.size(); ++a)
      for (std::size_t b = a + 1; b < nv.size(); ++b) adj[nv[a]][nv[b]] = adj[nv[b]][nv[a]] = 1;
    node.parent = parent_pos == n ? 0 : parent_pos + 1;
  }
  for (const auto& e : g.edges()) {
    const auto first = std::min(position[index(e.u)], position[index(e.v)]);
    nodes[first + 1].terminals.push_back(e);
  }
  for (auto& node : nodes) std::sort(node.terminals.begin(), node.terminals.end());

  std::vector<NodeId> tops;
  for (std::size_t i = 1; i <= n; ++i) {
    if (nodes[i].parent == 0)
      tops.push_back(i);
    else
      nodes[nodes[i].parent].children.push_back(i);
  }
  if (tops.size() > 1) {
    TreeNode join;
    join.id = nodes.size();
    join.kind = NodeKind::join;
    join.marked = true;
    join.parent = 0;
    for (auto t : tops) {
      nodes[t].parent = join.id;
      join.children.push_back(t);
    }
    nodes[0].children.push_back(join.id);
    nodes.push_back(std::move(join));
  } else {
    nodes[0].children = tops;
  }
  TreeDecomposition t;
  t.nodes = std::move(nodes);
  t.root = 0;
  return t;
}

/// Static decomposition used by the non-temporal pHRG baseline.
inline TreeDecomposition static_tree_decomposition(const StaticGraph& g) {
  if (g.empty()) throw ArgumentError("cannot decompose an empty graph");
  return decomposition_from_order(g, min_fill_order(g));
}

}  // namespace thrg

#endif  // THRG_STATIC_DECOMPOSITION_HPP
