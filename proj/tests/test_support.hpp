// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls into the code paths it is used to check.
#ifndef THRG_TESTS_TEST_SUPPORT_HPP
#define THRG_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "thrg/graph.hpp"
#include "thrg/random.hpp"
#include "thrg/rule.hpp"
#include "thrg/temporal_graph.hpp"

namespace thrg::testing {

/// Random timestamped interaction list: n vertices, up to m distinct pairs,
/// a sprinkling of repeats, self-loops and timestamp ties.
inline std::vector<EdgeEvent> random_events(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<EdgeEvent> events;
  std::set<std::pair<int, int>> pairs;
  const std::size_t max_pairs = n * (n - 1) / 2;
  m = std::min(m, max_pairs);
  while (pairs.size() < m) {
    int a = static_cast<int>(uniform_index(rng, n));
    int b = static_cast<int>(uniform_index(rng, n));
    if (a == b) continue;
    if (!pairs.insert(std::minmax(a, b)).second) continue;
    events.push_back(EdgeEvent{a + 100, b + 100, static_cast<double>(uniform_index(rng, 3 * m + 1))});
  }
  // Repeats and loops that simplification must drop.
  for (std::size_t i = 0; i < m / 5; ++i) {
    const auto& e = events[uniform_index(rng, events.size())];
    events.push_back(EdgeEvent{e.v, e.u, e.timestamp + 1 + static_cast<double>(uniform_index(rng, 10))});
  }
  events.push_back(EdgeEvent{100, 100, 0.0});
  return events;
}

/// Corpus member: n <= 30, m <= 60, beta <= 6.
inline TemporalGraph random_temporal_graph(std::uint64_t seed, std::size_t n_max = 30, std::size_t m_max = 60,
                                           std::size_t beta_max = 6) {
  Rng rng(seed);
  const std::size_t n = 3 + uniform_index(rng, n_max - 2);
  const std::size_t m = 1 + uniform_index(rng, m_max);
  const long long beta = 1 + static_cast<long long>(uniform_index(rng, beta_max));
  return size_quantize(simplify(random_events(rng, n, m)), beta);
}

/// G(n, p) on vertices 0..n-1.
inline StaticGraph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), Vertex{0});
  std::vector<Edge> es;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (uniform_real(rng) < p) es.push_back(Edge{i, j});
  return StaticGraph(std::move(vs), std::move(es));
}

inline StaticGraph random_relabel(const StaticGraph& g, Rng& rng) {
  const auto dense = relabel_dense(g);
  std::vector<Vertex> perm(dense.num_vertices());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
  for (auto& p : perm) p += 1000;
  return permute(dense, perm);
}

/// Every maximal clique (size >= 2) by subset enumeration; n <= 16.
inline std::set<std::vector<Vertex>> brute_force_maximal_cliques(const StaticGraph& g) {
  const auto& vs = g.vertices();
  const std::size_t n = vs.size();
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !g.has_edge(vs[i], vs[j])) ok = false;
    if (ok) cliques.push_back(mask);
  }
  std::set<std::vector<Vertex>> out;
  for (auto c : cliques) {
    if (__builtin_popcount(c) < 2) continue;
    bool maximal = true;
    for (auto d : cliques)
      if (d != c && (d & c) == c) maximal = false;
    if (!maximal) continue;
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < n; ++i)
      if (c >> i & 1) members.push_back(vs[i]);
    out.insert(members);
  }
  return out;
}

/// Orbit counts (15 orbits, ascending vertex order) from every 2-, 3- and
/// 4-subset, classifying connected ones by their sorted degree sequence.
inline std::vector<std::array<std::uint64_t, 15>> brute_force_orbits(const StaticGraph& g) {
  const auto& vs = g.vertices();
  const std::size_t n = vs.size();
  std::vector<std::array<std::uint64_t, 15>> out(n, std::array<std::uint64_t, 15>{});
  auto adj = [&](std::size_t i, std::size_t j) { return g.has_edge(vs[i], vs[j]); };
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < 2 || size > 4) continue;
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(i);
    std::vector<int> deg(sub.size(), 0);
    int edges = 0;
    for (std::size_t a = 0; a < sub.size(); ++a)
      for (std::size_t b = a + 1; b < sub.size(); ++b)
        if (adj(sub[a], sub[b])) {
          ++deg[a];
          ++deg[b];
          ++edges;
        }
    // connectivity by flood fill
    std::vector<int> seen(sub.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < sub.size(); ++y)
        if (!seen[y] && adj(sub[x], sub[y])) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    if (std::count(seen.begin(), seen.end(), 1) != size) continue;
    auto sorted = deg;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < sub.size(); ++a) {
      int orbit = -1;
      const int d = deg[a];
      if (size == 2) orbit = 0;
      else if (size == 3) orbit = edges == 3 ? 3 : (d == 2 ? 2 : 1);
      else if (sorted == std::vector<int>{1, 1, 2, 2}) orbit = d == 1 ? 4 : 5;
      else if (sorted == std::vector<int>{1, 1, 1, 3}) orbit = d == 1 ? 6 : 7;
      else if (sorted == std::vector<int>{2, 2, 2, 2}) orbit = 8;
      else if (sorted == std::vector<int>{1, 2, 2, 3}) orbit = d == 1 ? 9 : (d == 2 ? 10 : 11);
      else if (sorted == std::vector<int>{2, 2, 3, 3}) orbit = d == 2 ? 12 : 13;
      else if (sorted == std::vector<int>{3, 3, 3, 3}) orbit = 14;
      ++out[sub[a]][static_cast<std::size_t>(orbit)];
    }
  }
  return out;
}

/// Isomorphism by trying every bijection; n <= 8.
inline bool brute_force_isomorphic(const StaticGraph& a, const StaticGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  std::vector<std::size_t> perm(va.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (const auto& e : a.edges()) {
      const auto i = std::lower_bound(va.begin(), va.end(), e.u) - va.begin();
      const auto j = std::lower_bound(va.begin(), va.end(), e.v) - va.begin();
      if (!b.has_edge(vb[perm[static_cast<std::size_t>(i)]], vb[perm[static_cast<std::size_t>(j)]])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// All-pairs hop counts by Floyd–Warshall; returns histogram distance -> ordered pairs.
inline std::map<std::size_t, std::size_t> floyd_warshall_hops(const StaticGraph& g) {
  const auto& vs = g.vertices();
  const std::size_t n = vs.size();
  const std::size_t inf = 1u << 20;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && g.has_edge(vs[i], vs[j])) d[i][j] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] < inf) ++hist[d[i][j]];
  return hist;
}

/// True when some permutation of the internal labels maps rule a onto b.
inline bool brute_force_rule_equivalent(const ProductionRule& a, const ProductionRule& b) {
  if (a.lhs_arity != b.lhs_arity || a.internal_count != b.internal_count ||
      a.terminals.size() != b.terminals.size() || a.nonterminals.size() != b.nonterminals.size())
    return false;
  const std::size_t k = a.lhs_arity;
  std::vector<Label> perm(a.internal_count);
  std::iota(perm.begin(), perm.end(), static_cast<Label>(k));
  auto normal = [](const ProductionRule& r, const std::vector<Label>& map) {
    std::multiset<std::pair<Label, Label>> t;
    for (auto [x, y] : r.terminals) t.insert(std::minmax(map[x], map[y]));
    std::multiset<std::vector<Label>> n;
    for (const auto& tuple : r.nonterminals) {
      std::vector<Label> m;
      for (auto l : tuple) m.push_back(map[l]);
      n.insert(m);
    }
    return std::make_pair(t, n);
  };
  std::vector<Label> id(a.label_count());
  std::iota(id.begin(), id.end(), Label{0});
  const auto target = normal(b, id);
  do {
    std::vector<Label> map(a.label_count());
    for (std::size_t i = 0; i < k; ++i) map[i] = static_cast<Label>(i);
    for (std::size_t i = 0; i < perm.size(); ++i) map[k + i] = perm[i];
    if (normal(a, map) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace thrg::testing

#endif  // THRG_TESTS_TEST_SUPPORT_HPP
