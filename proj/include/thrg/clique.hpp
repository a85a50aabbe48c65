#ifndef THRG_CLIQUE_HPP
#define THRG_CLIQUE_HPP

#include <algorithm>
#include <iterator>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/graph.hpp"
#include "thrg/random.hpp"

namespace thrg {

struct Clique {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Edge> edges;       // every pair, sorted

  std::size_t size() const noexcept { return vertices.size(); }

  friend bool operator==(const Clique&, const Clique&) = default;
};

inline Clique make_clique(std::vector<Vertex> vertices) {
  Clique c;
  std::sort(vertices.begin(), vertices.end());
  c.vertices = std::move(vertices);
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < c.vertices.size(); ++j) c.edges.push_back(Edge{c.vertices[i], c.vertices[j]});
  return c;
}

namespace detail {

using IndexSet = std::vector<std::uint32_t>;

inline IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const IndexSet& a, const IndexSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

// Bron–Kerbosch with Tomita pivoting: the pivot maximizes |P ∩ N(u)| over P ∪ X.
template <typename Visit>
void bron_kerbosch(const CompactGraph& g, IndexSet& r, IndexSet p, IndexSet x, Visit& visit) {
  if (p.empty()) {
    if (x.empty()) visit(r);
    return;
  }
  std::uint32_t pivot = p.front();
  std::size_t best = 0;
  bool first = true;
  for (const IndexSet* side : {&p, &x}) {
    for (auto u : *side) {
      const auto k = intersection_size(p, g.adj[u]);
      if (first || k > best) {
        best = k;
        pivot = u;
        first = false;
      }
    }
  }
  IndexSet candidates;
  std::set_difference(p.begin(), p.end(), g.adj[pivot].begin(), g.adj[pivot].end(), std::back_inserter(candidates));
  for (auto v : candidates) {
    r.push_back(v);
    bron_kerbosch(g, r, intersect(p, g.adj[v]), intersect(x, g.adj[v]), visit);
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), v));
    x.insert(std::lower_bound(x.begin(), x.end(), v), v);
  }
}

}  // namespace detail

/// All maximal cliques with at least one edge, sorted lexicographically by
/// vertex list. Isolated vertices are not reported.
inline std::vector<Clique> enumerate_maximal_cliques(const StaticGraph& g) {
  const auto c = compact(g);
  std::vector<Clique> out;
  auto visit = [&](const detail::IndexSet& r) {
    if (r.size() < 2) return;
    std::vector<Vertex> vs;
    vs.reserve(r.size());
    for (auto i : r) vs.push_back(c.labels[i]);
    out.push_back(make_clique(std::move(vs)));
  };
  detail::IndexSet r;
  detail::IndexSet p(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) p[i] = i;
  detail::bron_kerbosch(c, r, std::move(p), {}, visit);
  std::sort(out.begin(), out.end(), [](const Clique& a, const Clique& b) { return a.vertices < b.vertices; });
  return out;
}

/// A maximum-cardinality clique; ties are broken uniformly at random. Consumes
/// exactly one draw from `rng` whenever there is more than one candidate.
inline Clique extract_max_clique(const StaticGraph& g, Rng& rng) {
  if (g.num_edges() == 0) throw ArgumentError("no clique of size >= 2");
  auto cliques = enumerate_maximal_cliques(g);
  std::size_t best = 0;
  for (const auto& c : cliques) best = std::max(best, c.size());
  std::erase_if(cliques, [&](const Clique& c) { return c.size() != best; });
  if (cliques.size() == 1) return std::move(cliques.front());
  return std::move(cliques[uniform_index(rng, cliques.size())]);
}

}  // namespace thrg

#endif  // THRG_CLIQUE_HPP
