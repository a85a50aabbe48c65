#ifndef THRG_GRAPH_HPP
#define THRG_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thrg/errors.hpp"

namespace thrg {

using Vertex = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Sorts and removes duplicates in place.
template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

template <typename T>
bool sorted_contains(const std::vector<T>& xs, const T& x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

/// Simple undirected graph over an explicit vertex set. Vertex ids need not be
/// dense; edges are canonical, sorted and unique, and both endpoints of every
/// edge belong to the vertex set. Isolated vertices are allowed.
class StaticGraph {
 public:
  StaticGraph() = default;

  /// Self-loops are dropped and duplicate edges collapsed.
  StaticGraph(std::vector<Vertex> vertices, std::vector<Edge> edges) : vertices_(std::move(vertices)) {
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.u == e.v) continue;
      edges_.push_back(make_edge(e.u, e.v));
      vertices_.push_back(e.u);
      vertices_.push_back(e.v);
    }
    sort_unique(vertices_);
    sort_unique(edges_);
  }

  explicit StaticGraph(std::vector<Edge> edges) : StaticGraph({}, std::move(edges)) {}

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_vertex(Vertex v) const { return sorted_contains(vertices_, v); }
  bool has_edge(Vertex a, Vertex b) const { return a != b && sorted_contains(edges_, make_edge(a, b)); }

  friend bool operator==(const StaticGraph&, const StaticGraph&) = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// Adjacency-list view with vertices renumbered 0..n-1 in ascending id order.
struct CompactGraph {
  std::vector<Vertex> labels;                  // compact index -> original id
  std::vector<std::vector<std::uint32_t>> adj;  // sorted neighbour lists

  std::size_t size() const noexcept { return adj.size(); }

  std::size_t degree(std::size_t v) const { return adj[v].size(); }

  bool adjacent(std::size_t a, std::size_t b) const {
    return std::binary_search(adj[a].begin(), adj[a].end(), static_cast<std::uint32_t>(b));
  }
};

inline CompactGraph compact(const StaticGraph& g) {
  CompactGraph c;
  c.labels = g.vertices();
  c.adj.resize(c.labels.size());
  auto index = [&](Vertex v) {
    return static_cast<std::uint32_t>(std::lower_bound(c.labels.begin(), c.labels.end(), v) - c.labels.begin());
  };
  for (const auto& e : g.edges()) {
    const auto a = index(e.u);
    const auto b = index(e.v);
    c.adj[a].push_back(b);
    c.adj[b].push_back(a);
  }
  for (auto& nbrs : c.adj) std::sort(nbrs.begin(), nbrs.end());
  return c;
}

/// Same graph with vertices renamed 0..n-1 in ascending id order.
inline StaticGraph relabel_dense(const StaticGraph& g) {
  const auto& vs = g.vertices();
  auto index = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  std::vector<Vertex> vertices(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) vertices[i] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& e : g.edges()) edges.push_back(make_edge(index(e.u), index(e.v)));
  return StaticGraph(std::move(vertices), std::move(edges));
}

/// Applies a vertex permutation (perm[old dense index] = new id) to a dense graph.
inline StaticGraph permute(const StaticGraph& g, const std::vector<Vertex>& perm) {
  const auto& vs = g.vertices();
  auto map = [&](Vertex v) {
    return perm[static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin())];
  };
  std::vector<Vertex> vertices;
  vertices.reserve(vs.size());
  for (auto v : vs) vertices.push_back(map(v));
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(make_edge(map(e.u), map(e.v)));
  return StaticGraph(std::move(vertices), std::move(edges));
}

/// Writes "u v" lines after the given '#' header lines. Isolated vertices are
/// written as a line holding a single id so that read_edgelist restores them.
inline void write_edgelist(std::ostream& out, const StaticGraph& g, const std::vector<std::string>& header = {}) {
  for (const auto& line : header) out << "# " << line << '\n';
  std::vector<char> covered;
  const auto& vs = g.vertices();
  covered.assign(vs.size(), 0);
  auto index = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  for (const auto& e : g.edges()) {
    covered[index(e.u)] = 1;
    covered[index(e.v)] = 1;
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (!covered[i]) out << vs[i] << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

/// Reads a static edgelist. Lines starting with '%' or '#' are comments; a line
/// with one field declares a vertex; otherwise the first two fields are an edge
/// and further columns (weights, timestamps) are ignored. Vertex ids must be
/// non-negative integers.
inline StaticGraph read_edgelist(std::istream& in) {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  auto parse_id = [&](const std::string& tok) -> Vertex {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(line_no, "non-numeric vertex id '" + tok + "'");
    }
    if (pos != tok.size() || tok.front() == '-' || value > 0xffffffffULL)
      throw ParseError(line_no, "invalid vertex id '" + tok + "'");
    return static_cast<Vertex>(value);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    if (a.front() == '%' || a.front() == '#') continue;
    if (!(fields >> b)) {
      vertices.push_back(parse_id(a));
      continue;
    }
    edges.push_back(Edge{parse_id(a), parse_id(b)});
  }
  return StaticGraph(std::move(vertices), std::move(edges));
}

}  // namespace thrg

#endif  // THRG_GRAPH_HPP
