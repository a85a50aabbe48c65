#ifndef THRG_BASELINES_HPP
#define THRG_BASELINES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/graph.hpp"
#include "thrg/random.hpp"

namespace thrg {

struct DegreeSequence {
  std::vector<std::size_t> degrees;
};

/// Degrees of g in ascending vertex order.
inline DegreeSequence degree_sequence(const StaticGraph& g) {
  const auto c = compact(g);
  DegreeSequence d;
  d.degrees.reserve(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) d.degrees.push_back(c.degree(v));
  return d;
}

/// Edge-independent Chung-Lu: pair (i, j) is joined with probability
/// min(1, d_i d_j / sum(d)). Vertices are 0..n-1, isolated ones included.
inline StaticGraph chung_lu(const DegreeSequence& seq, Rng& rng) {
  const auto n = seq.degrees.size();
  std::vector<Vertex> vertices(n);
  std::iota(vertices.begin(), vertices.end(), Vertex{0});
  const double total = static_cast<double>(std::accumulate(seq.degrees.begin(), seq.degrees.end(), std::size_t{0}));
  std::vector<Edge> edges;
  if (total > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (seq.degrees[i] == 0) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (seq.degrees[j] == 0) continue;
        const double p = std::min(1.0, static_cast<double>(seq.degrees[i]) * static_cast<double>(seq.degrees[j]) / total);
        if (bernoulli(rng, p)) edges.push_back(Edge{static_cast<Vertex>(i), static_cast<Vertex>(j)});
      }
    }
  }
  return StaticGraph(std::move(vertices), std::move(edges));
}

namespace detail {

// Pair index in [0, n(n-1)/2) -> (i, j) with i < j, row-major.
inline Edge pair_from_index(std::uint64_t index, std::uint64_t n) {
  std::uint64_t i = 0;
  std::uint64_t row = n - 1;
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return Edge{static_cast<Vertex>(i), static_cast<Vertex>(i + 1 + index)};
}

}  // namespace detail

/// Uniform G(n, m): a simple graph on vertices 0..n-1 with exactly m edges.
inline StaticGraph erdos_renyi(std::size_t n, std::size_t m, Rng& rng) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs) throw ArgumentError("m exceeds n(n-1)/2");
  std::vector<Vertex> vertices(n);
  std::iota(vertices.begin(), vertices.end(), Vertex{0});

  // Floyd's subset sampling over pair indices; draw the complement when dense.
  const bool complement = m > pairs / 2;
  const std::uint64_t draw = complement ? pairs - m : m;
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draw * 2);
  for (std::uint64_t j = pairs - draw; j < pairs; ++j) {
    const auto t = uniform_index(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picked(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());
  std::vector<Edge> edges;
  edges.reserve(m);
  if (complement) {
    std::size_t k = 0;
    for (std::uint64_t idx = 0; idx < pairs; ++idx) {
      if (k < picked.size() && picked[k] == idx) {
        ++k;
        continue;
      }
      edges.push_back(detail::pair_from_index(idx, n));
    }
  } else {
    for (auto idx : picked) edges.push_back(detail::pair_from_index(idx, n));
  }
  return StaticGraph(std::move(vertices), std::move(edges));
}

}  // namespace thrg

#endif  // THRG_BASELINES_HPP
