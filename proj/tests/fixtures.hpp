// Hand-built temporal graphs for the worked example checks.
#ifndef THRG_TESTS_FIXTURES_HPP
#define THRG_TESTS_FIXTURES_HPP

#include <vector>

#include "thrg/temporal_graph.hpp"

namespace thrg::testing {

// Vertex names used by the worked example.
inline constexpr Vertex kA = 0, kB = 1, kC = 2, kD = 3, kE = 4, kF = 5, kG = 6;

inline TemporalGraph make_temporal(std::size_t n, std::size_t beta, std::vector<TemporalEdge> edges) {
  TemporalGraph g;
  g.num_vertices = n;
  g.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.labels[i] = static_cast<std::int64_t>(i);
  g.beta = beta;
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::stable_sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) { return x.bin < y.bin; });
  g.edges = std::move(edges);
  g.original_event_count = g.edges.size();
  return g;
}

/// Four bins. Bin 4 is the triangle {a, e, g}; a and e already have edges in
/// earlier bins, g does not. Bin 3 is (c, f), (d, f) where f is new and c, d
/// persist from earlier bins.
inline TemporalGraph worked_example() {
  return make_temporal(7, 4,
                       {{kA, kB, 1}, {kB, kC, 1}, {kB, kE, 1},
                        {kC, kD, 2}, {kA, kD, 2}, {kD, kE, 2},
                        {kC, kF, 3}, {kD, kF, 3},
                        {kA, kE, 4}, {kA, kG, 4}, {kE, kG, 4}});
}

/// A single bin holding one triangle.
inline TemporalGraph single_triangle() {
  return make_temporal(3, 1, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
}

}  // namespace thrg::testing

#endif  // THRG_TESTS_FIXTURES_HPP
