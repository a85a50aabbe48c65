#ifndef THRG_METRICS_HPP
#define THRG_METRICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/graph.hpp"

namespace thrg {

/// Empirical CDF: F(support[i]) = cumulative[i], right-continuous steps.
struct DiscreteCDF {
  std::vector<double> support;
  std::vector<double> cumulative;

  bool empty() const noexcept { return support.empty(); }

  friend bool operator==(const DiscreteCDF&, const DiscreteCDF&) = default;
};

inline DiscreteCDF make_cdf(std::vector<double> values) {
  DiscreteCDF cdf;
  if (values.empty()) return cdf;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    cdf.support.push_back(values[i]);
    cdf.cumulative.push_back(static_cast<double>(i + 1) / n);
  }
  cdf.cumulative.back() = 1.0;
  return cdf;
}

/// Area between two step CDFs over their merged support. For integer-valued
/// distributions this is the 1-Wasserstein distance.
inline double emd(const DiscreteCDF& a, const DiscreteCDF& b) {
  if (a.empty() || b.empty()) throw ArgumentError("emd of an empty distribution");
  std::vector<double> xs = a.support;
  xs.insert(xs.end(), b.support.begin(), b.support.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto value = [](const DiscreteCDF& f, double x) {
    const auto it = std::upper_bound(f.support.begin(), f.support.end(), x);
    if (it == f.support.begin()) return 0.0;
    return f.cumulative[static_cast<std::size_t>(it - f.support.begin()) - 1];
  };
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) area += std::abs(value(a, xs[i]) - value(b, xs[i])) * (xs[i + 1] - xs[i]);
  return area;
}

/// Snaps every support point to the lower edge of one of `buckets`
/// equal-width buckets over [0, max_value].
inline DiscreteCDF bucketize(const DiscreteCDF& f, std::size_t buckets, double max_value) {
  if (f.empty()) return f;
  if (buckets == 0) throw ArgumentError("bucket count must be positive");
  if (!(max_value > 0)) return DiscreteCDF{{0.0}, {1.0}};
  const double width = max_value / static_cast<double>(buckets);
  DiscreteCDF out;
  for (std::size_t i = 0; i < f.support.size(); ++i) {
    const auto idx = std::min(buckets - 1, static_cast<std::size_t>(std::max(0.0, std::floor(f.support[i] / width))));
    const double edge = static_cast<double>(idx) * width;
    if (!out.support.empty() && out.support.back() == edge)
      out.cumulative.back() = f.cumulative[i];
    else {
      out.support.push_back(edge);
      out.cumulative.push_back(f.cumulative[i]);
    }
  }
  return out;
}

/// EMD after bucketing both CDFs over a shared [0, max] range.
inline double bucketed_emd(const DiscreteCDF& a, const DiscreteCDF& b, std::size_t buckets = 100) {
  if (a.empty() || b.empty()) throw ArgumentError("emd of an empty distribution");
  const double hi = std::max(a.support.back(), b.support.back());
  return emd(bucketize(a, buckets, hi), bucketize(b, buckets, hi));
}

inline DiscreteCDF degree_cdf(const StaticGraph& g) {
  const auto c = compact(g);
  std::vector<double> values;
  values.reserve(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) values.push_back(static_cast<double>(c.degree(v)));
  return make_cdf(std::move(values));
}

/// Shortest-path lengths of all connected ordered pairs (distance >= 1).
inline DiscreteCDF hop_distance_cdf(const StaticGraph& g) {
  const auto c = compact(g);
  std::map<std::size_t, std::uint64_t> histogram;
  std::vector<std::size_t> dist(c.size());
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t s = 0; s < c.size(); ++s) {
    std::fill(dist.begin(), dist.end(), static_cast<std::size_t>(-1));
    dist[s] = 0;
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      for (auto y : c.adj[x])
        if (dist[y] == static_cast<std::size_t>(-1)) {
          dist[y] = dist[x] + 1;
          ++histogram[dist[y]];
          q.push(y);
        }
    }
  }
  DiscreteCDF cdf;
  std::uint64_t total = 0;
  for (const auto& [d, count] : histogram) total += count;
  std::uint64_t running = 0;
  for (const auto& [d, count] : histogram) {
    running += count;
    cdf.support.push_back(static_cast<double>(d));
    cdf.cumulative.push_back(static_cast<double>(running) / static_cast<double>(total));
  }
  return cdf;
}

/// Local clustering coefficient per vertex (0 for degree < 2), compact order.
inline std::vector<double> clustering_coefficients(const StaticGraph& g) {
  const auto c = compact(g);
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t v = 0; v < c.size(); ++v) {
    const auto& nv = c.adj[v];
    const auto d = nv.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (c.adjacent(nv[i], nv[j])) ++links;
    out[v] = 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return out;
}

inline DiscreteCDF clustering_cdf(const StaticGraph& g) { return make_cdf(clustering_coefficients(g)); }

struct PowerIterationOptions {
  double tolerance = 1e-8;
  std::size_t max_iterations = 1000;
};

/// Eigenvector centrality, L2-normalized and non-negative, compact order.
/// Iterates with A + I so that bipartite graphs do not oscillate.
inline std::vector<double> eigenvector_centrality(const StaticGraph& g, PowerIterationOptions options = {}) {
  const auto c = compact(g);
  const std::size_t n = c.size();
  if (n == 0) return {};
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  double residual = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = x[v];
      for (auto w : c.adj[v]) s += x[w];
      y[v] = s;
    }
    double norm = 0.0;
    for (auto value : y) norm += value * value;
    norm = std::sqrt(norm);
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= norm;
      residual += (y[v] - x[v]) * (y[v] - x[v]);
    }
    residual = std::sqrt(residual);
    x.swap(y);
    if (residual < options.tolerance) return x;
  }
  throw ConvergenceError(options.max_iterations, residual);
}

inline DiscreteCDF eigenvector_cdf(const StaticGraph& g, PowerIterationOptions options = {}) {
  return make_cdf(eigenvector_centrality(g, options));
}

// ---------------------------------------------------------------------------
// Graphlet orbits of connected 2-4 node graphlets, standard numbering:
//   0 edge | 1,2 path P3 (end, middle) | 3 triangle
//   4,5 path P4 (end, inner) | 6,7 star (leaf, centre) | 8 cycle C4
//   9,10,11 paw (pendant, triangle degree-2, degree-3)
//   12,13 diamond (degree-2, degree-3) | 14 K4

inline constexpr std::size_t kOrbitCount = 15;
using OrbitVector = std::array<std::uint64_t, kOrbitCount>;

struct OrbitCounts {
  std::vector<Vertex> vertices;     // ascending ids
  std::vector<OrbitVector> counts;  // per vertex
};

/// Per-vertex orbit counts over all connected induced 2-4 node subgraphs.
/// Counts of non-induced pattern copies through each vertex follow from
/// degrees, common-neighbour counts, triangles and 4-cliques; induced orbit
/// counts are then recovered by peeling off the copies contained in denser
/// graphlets, densest first.
inline OrbitCounts orbit_counts(const StaticGraph& g) {
  using i64 = std::int64_t;
  const auto c = compact(g);
  const std::size_t n = c.size();
  OrbitCounts out;
  out.vertices = c.labels;
  out.counts.assign(n, OrbitVector{});

  auto edge_pos = [&](std::uint32_t a, std::uint32_t b) {
    return static_cast<std::size_t>(std::lower_bound(c.adj[a].begin(), c.adj[a].end(), b) - c.adj[a].begin());
  };
  std::vector<i64> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = static_cast<i64>(c.degree(v));

  // common[x][i]: common neighbours of x and its i-th neighbour
  std::vector<std::vector<i64>> common(n);
  std::vector<char> mark(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (auto y : c.adj[x]) mark[y] = 1;
    common[x].resize(c.adj[x].size());
    for (std::size_t i = 0; i < c.adj[x].size(); ++i) {
      i64 k = 0;
      for (auto z : c.adj[c.adj[x][i]]) k += mark[z];
      common[x][i] = k;
    }
    for (auto y : c.adj[x]) mark[y] = 0;
  }
  std::vector<i64> tri(n, 0), walk2(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (auto k : common[x]) tri[x] += k;
    tri[x] /= 2;
    for (auto y : c.adj[x]) walk2[x] += deg[y] - 1;
  }
  auto choose2 = [](i64 k) { return k * (k - 1) / 2; };
  auto choose3 = [](i64 k) { return k * (k - 1) * (k - 2) / 6; };

  std::vector<i64> paths2(n, 0);  // walks x-a-b with b != x, per b
  std::vector<std::uint32_t> touched;
  for (std::uint32_t x = 0; x < n; ++x) {
    const i64 d = deg[x];
    const auto& nx = c.adj[x];
    std::array<i64, kOrbitCount> N{};
    N[0] = d;
    N[3] = tri[x];
    N[2] = choose2(d) - tri[x];
    N[1] = walk2[x] - 2 * tri[x];
    N[7] = choose3(d);
    N[11] = tri[x] * (d - 2);
    for (std::size_t i = 0; i < nx.size(); ++i) {
      const auto a = nx[i];
      const i64 ca = common[x][i];
      N[4] += walk2[a] - (d - 1);
      N[5] += (d - 1) * (deg[a] - 1) - ca;
      N[6] += choose2(deg[a] - 1);
      N[9] += tri[a] - ca;
      N[10] += ca * (deg[a] - 2);
      N[13] += choose2(ca);
    }
    N[4] -= 2 * tri[x];

    // 4-cycles through x
    for (auto a : nx)
      for (auto b : c.adj[a]) {
        if (b == x) continue;
        if (paths2[b]++ == 0) touched.push_back(b);
      }
    for (auto b : touched) {
      N[8] += choose2(paths2[b]);
      paths2[b] = 0;
    }
    touched.clear();

    // triangles {x, w, z} with w < z; 4-cliques {x, w, z, y} with w < z < y
    for (auto y : nx) mark[y] = 1;
    for (auto w : nx)
      for (auto z : c.adj[w]) {
        if (z <= w || !mark[z]) continue;
        N[12] += common[w][edge_pos(w, z)] - 1;
        for (auto y : c.adj[z])
          if (y > z && mark[y] && c.adjacent(w, y)) ++N[14];
      }
    for (auto y : nx) mark[y] = 0;

    auto& o = out.counts[x];
    std::array<i64, kOrbitCount> r{};
    r[0] = N[0];
    r[1] = N[1];
    r[2] = N[2];
    r[3] = N[3];
    r[14] = N[14];
    r[13] = N[13] - 3 * r[14];
    r[12] = N[12] - 3 * r[14];
    r[11] = N[11] - 2 * r[13] - 3 * r[14];
    r[10] = N[10] - 2 * r[12] - 2 * r[13] - 6 * r[14];
    r[9] = N[9] - 2 * r[12] - 3 * r[14];
    r[8] = N[8] - r[12] - r[13] - 3 * r[14];
    r[7] = N[7] - r[11] - r[13] - r[14];
    r[6] = N[6] - r[9] - r[10] - 2 * r[12] - r[13] - 3 * r[14];
    r[5] = N[5] - 2 * r[8] - r[10] - 2 * r[11] - 2 * r[12] - 4 * r[13] - 6 * r[14];
    r[4] = N[4] - 2 * r[8] - 2 * r[9] - r[10] - 4 * r[12] - 2 * r[13] - 6 * r[14];
    for (std::size_t k = 0; k < kOrbitCount; ++k) o[k] = static_cast<std::uint64_t>(r[k]);
  }
  return out;
}

/// Ranks with ties averaged (1-based).
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

/// Pearson correlation; 0 when either side has zero variance.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0 || sbb <= 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ArgumentError("spearman needs two equal-length samples of size >= 2");
  return pearson(average_ranks(a), average_ranks(b));
}

/// The 11 non-redundant orbits of 2-4 node graphlets.
inline constexpr std::array<std::size_t, 11> kGcdOrbits{0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11};

using CorrelationMatrix = std::array<std::array<double, 11>, 11>;

/// Spearman correlations between the 11 orbit columns, with one all-ones row
/// appended to the per-vertex matrix.
inline CorrelationMatrix graphlet_correlation_matrix(const StaticGraph& g) {
  if (g.num_vertices() < 2) throw ArgumentError("graphlet correlation needs at least 2 vertices");
  const auto oc = orbit_counts(g);
  std::array<std::vector<double>, 11> ranks;
  for (std::size_t k = 0; k < 11; ++k) {
    std::vector<double> column;
    column.reserve(oc.counts.size() + 1);
    for (const auto& row : oc.counts) column.push_back(static_cast<double>(row[kGcdOrbits[k]]));
    column.push_back(1.0);
    ranks[k] = average_ranks(column);
  }
  CorrelationMatrix m{};
  for (std::size_t i = 0; i < 11; ++i) {
    m[i][i] = 1.0;
    for (std::size_t j = i + 1; j < 11; ++j) m[i][j] = m[j][i] = pearson(ranks[i], ranks[j]);
  }
  return m;
}

inline double gcd(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = i + 1; j < 11; ++j) s += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
  return std::sqrt(s);
}

/// Graphlet Correlation Distance (GCD-11).
inline double gcd(const StaticGraph& g1, const StaticGraph& g2) {
  return gcd(graphlet_correlation_matrix(g1), graphlet_correlation_matrix(g2));
}

// ---------------------------------------------------------------------------

namespace detail {

// Colour refinement run jointly on both graphs so colours are comparable.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> joint_colours(const CompactGraph& a,
                                                                                   const CompactGraph& b) {
  std::vector<std::size_t> ca(a.size()), cb(b.size());
  for (std::size_t v = 0; v < a.size(); ++v) ca[v] = a.degree(v);
  for (std::size_t v = 0; v < b.size(); ++v) cb[v] = b.degree(v);
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto signature = [](const CompactGraph& g, const std::vector<std::size_t>& col, std::size_t v) {
      std::vector<std::size_t> s{col[v]};
      for (auto w : g.adj[v]) s.push_back(col[w]);
      std::sort(s.begin() + 1, s.end());
      return s;
    };
    std::vector<std::vector<std::size_t>> sa(a.size()), sb(b.size());
    for (std::size_t v = 0; v < a.size(); ++v) ids[sa[v] = signature(a, ca, v)];
    for (std::size_t v = 0; v < b.size(); ++v) ids[sb[v] = signature(b, cb, v)];
    std::size_t next = 0;
    for (auto& [sig, id] : ids) id = next++;
    for (std::size_t v = 0; v < a.size(); ++v) ca[v] = ids[sa[v]];
    for (std::size_t v = 0; v < b.size(); ++v) cb[v] = ids[sb[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {ca, cb};
}

}  // namespace detail

/// Exact isomorphism test by refinement-pruned backtracking. Intended for
/// small graphs (tens of vertices).
inline bool is_isomorphic(const StaticGraph& g1, const StaticGraph& g2) {
  if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return false;
  const auto a = compact(g1);
  const auto b = compact(g2);
  const std::size_t n = a.size();
  const auto [ca, cb] = detail::joint_colours(a, b);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }

  // Map vertices of a in an order that keeps each new vertex attached to
  // already-mapped ones where possible.
  std::vector<std::size_t> order;
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> anchored(n, 0);
  std::map<std::size_t, std::size_t> class_size;
  for (auto col : ca) ++class_size[col];
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == n || anchored[v] > anchored[best] ||
          (anchored[v] == anchored[best] && class_size[ca[v]] < class_size[ca[best]]))
        best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (auto w : a.adj[best]) ++anchored[w];
  }

  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  auto search = [&](auto& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const auto v = order[depth];
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u] || cb[u] != ca[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const auto w = order[d];
        if (a.adjacent(v, w) != b.adjacent(u, map[w])) ok = false;
      }
      if (!ok) continue;
      map[v] = u;
      used[u] = 1;
      if (self(self, depth + 1)) return true;
      used[u] = 0;
    }
    map[v] = n;
    return false;
  };
  return search(search, 0);
}

}  // namespace thrg

#endif  // THRG_METRICS_HPP
