#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>

#include "test_support.hpp"
#include "thrg/metrics.hpp"

namespace thrg {
namespace {

StaticGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
  return StaticGraph(std::move(e));
}

StaticGraph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.push_back(make_edge(i, static_cast<Vertex>((i + 1) % n)));
  return StaticGraph(std::move(e));
}

StaticGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return StaticGraph(std::move(e));
}

StaticGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
  return StaticGraph(std::move(e));
}

// ---- CDFs and EMD

TEST(Cdf, DegreeOfCompleteGraph) {
  EXPECT_EQ(degree_cdf(complete(4)), (DiscreteCDF{{3.0}, {1.0}}));
}

TEST(Cdf, DegreeOfStar) {
  EXPECT_EQ(degree_cdf(star(4)), (DiscreteCDF{{1.0, 4.0}, {0.8, 1.0}}));
}

TEST(Emd, Identity) {
  const auto f = make_cdf({1, 2, 2, 5, 7});
  EXPECT_DOUBLE_EQ(emd(f, f), 0.0);
}

TEST(Emd, PointMassShift) { EXPECT_DOUBLE_EQ(emd(make_cdf({3}), make_cdf({5})), 2.0); }

TEST(Emd, PartialShift) {
  // F1 and F2 differ by 1/4 on [3, 4)
  EXPECT_DOUBLE_EQ(emd(make_cdf({1, 2, 3, 4}), make_cdf({1, 2, 3, 3})), 0.25);
}

TEST(Emd, PmfExample) {
  // masses (.5, .25, .25) vs (.25, .5, .25) on {1, 2, 3}
  EXPECT_DOUBLE_EQ(emd(make_cdf({1, 1, 2, 3}), make_cdf({1, 2, 2, 3})), 0.25);
}

TEST(Emd, TriangleInequality) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    std::array<DiscreteCDF, 3> f;
    for (auto& x : f) {
      std::vector<double> v(1 + uniform_index(rng, 6));
      for (auto& y : v) y = static_cast<double>(uniform_index(rng, 8));
      x = make_cdf(v);
    }
    EXPECT_LE(emd(f[0], f[2]), emd(f[0], f[1]) + emd(f[1], f[2]) + 1e-12);
    EXPECT_EQ(emd(f[0], f[1]) == 0.0, f[0] == f[1]);
  }
}

TEST(Emd, Symmetric) {
  const auto a = make_cdf({0, 1, 1, 4});
  const auto b = make_cdf({2, 3});
  EXPECT_DOUBLE_EQ(emd(a, b), emd(b, a));
}

TEST(Emd, EmptyThrows) { EXPECT_THROW(emd(DiscreteCDF{}, make_cdf({1})), ArgumentError); }

TEST(Emd, BucketingIsCoarse) {
  const auto a = make_cdf({0, 100});
  const auto b = make_cdf({0.5, 100});
  EXPECT_DOUBLE_EQ(bucketed_emd(a, b, 100), 0.0);
  EXPECT_NEAR(bucketed_emd(make_cdf({0}), make_cdf({100}), 100), 99.0, 1e-9);
}

// ---- hop distance

TEST(Hops, Path) {
  // path on 4 vertices: 6 ordered pairs at 1, 4 at 2, 2 at 3
  EXPECT_EQ(hop_distance_cdf(path(4)), (DiscreteCDF{{1, 2, 3}, {0.5, 10.0 / 12, 1.0}}));
}

TEST(Hops, ThreePath) { EXPECT_EQ(hop_distance_cdf(path(3)), (DiscreteCDF{{1, 2}, {4.0 / 6, 1.0}})); }

TEST(Hops, CompleteGraph) { EXPECT_EQ(hop_distance_cdf(complete(5)), (DiscreteCDF{{1.0}, {1.0}})); }

TEST(Hops, MatchesFloydWarshall) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_graph(rng, 3 + uniform_index(rng, 15), 0.2);
    if (g.num_edges() == 0) continue;
    const auto hist = testing::floyd_warshall_hops(g);
    std::vector<double> values;
    for (const auto& [d, c] : hist) values.insert(values.end(), c, static_cast<double>(d));
    const auto expected = make_cdf(values);
    const auto got = hop_distance_cdf(g);
    ASSERT_EQ(got.support, expected.support);
    for (std::size_t i = 0; i < got.support.size(); ++i) EXPECT_NEAR(got.cumulative[i], expected.cumulative[i], 1e-12);
  }
}

// ---- clustering

TEST(Clustering, Triangle) {
  for (auto c : clustering_coefficients(complete(3))) EXPECT_DOUBLE_EQ(c, 1.0);
}

TEST(Clustering, Star) {
  for (auto c : clustering_coefficients(star(5))) EXPECT_DOUBLE_EQ(c, 0.0);
}

TEST(Clustering, Paw) {
  // triangle 0-1-2 plus pendant 3 on 2
  const StaticGraph g({{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto c = clustering_coefficients(g);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[2], 1.0 / 3);
  EXPECT_DOUBLE_EQ(c[3], 0.0);
}

// ---- eigenvector centrality

TEST(Eigenvector, CompleteGraph) {
  for (std::size_t n : {3u, 5u, 8u})
    for (auto x : eigenvector_centrality(complete(n))) EXPECT_NEAR(x, 1.0 / std::sqrt(static_cast<double>(n)), 1e-6);
}

TEST(Eigenvector, Star) {
  // bipartite: centre = sqrt(k) * leaf
  const auto x = eigenvector_centrality(star(4));
  EXPECT_NEAR(x[0], 2.0 / std::sqrt(8.0), 1e-6);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR(x[i], 1.0 / std::sqrt(8.0), 1e-6);
}

TEST(Eigenvector, NonConvergenceThrows) {
  PowerIterationOptions o;
  o.max_iterations = 1;
  o.tolerance = 0.0;
  EXPECT_THROW(eigenvector_centrality(path(5), o), ConvergenceError);
}

// ---- orbits

TEST(Orbits, CompleteGraphK4) {
  const auto oc = orbit_counts(complete(4));
  for (const auto& row : oc.counts) {
    OrbitVector expected{};
    expected[0] = 3;
    expected[3] = 3;
    expected[14] = 1;
    EXPECT_EQ(row, expected);
  }
}

TEST(Orbits, EdgelessIsZero) {
  const StaticGraph g({0, 1, 2, 3}, {});
  for (const auto& row : orbit_counts(g).counts) EXPECT_EQ(row, OrbitVector{});
}

TEST(Orbits, Path4) {
  const auto oc = orbit_counts(path(4));
  EXPECT_EQ(oc.counts[0][4], 1u);
  EXPECT_EQ(oc.counts[1][5], 1u);
  EXPECT_EQ(oc.counts[1][2], 1u);
  EXPECT_EQ(oc.counts[0][1], 1u);
}

TEST(Orbits, MatchBruteForce) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 11);
    const auto g = testing::random_graph(rng, n, 0.15 + 0.7 * uniform_real(rng));
    if (g.num_vertices() == 0) continue;
    const auto oc = orbit_counts(g);
    const auto oracle = testing::brute_force_orbits(g);
    ASSERT_EQ(oc.counts.size(), oracle.size());
    for (std::size_t v = 0; v < oracle.size(); ++v) EXPECT_EQ(oc.counts[v], oracle[v]) << trial << " v=" << v;
  }
}

TEST(Orbits, DenseGraphsMatchBruteForce) {
  Rng rng(16);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = testing::random_graph(rng, 16, 0.3 + 0.05 * trial);
    const auto oc = orbit_counts(g);
    const auto oracle = testing::brute_force_orbits(g);
    for (std::size_t v = 0; v < oracle.size(); ++v) EXPECT_EQ(oc.counts[v], oracle[v]) << trial << " v=" << v;
  }
}

TEST(Orbits, OrbitZeroIsDegree) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, 20, 0.25);
    const auto oc = orbit_counts(g);
    const auto c = compact(g);
    for (std::size_t v = 0; v < c.size(); ++v) EXPECT_EQ(oc.counts[v][0], c.degree(v));
  }
}

TEST(Cdf, LabelInvariant) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 18, 0.25);
    const auto h = testing::random_relabel(g, rng);
    EXPECT_EQ(degree_cdf(g), degree_cdf(h));
    EXPECT_EQ(hop_distance_cdf(g), hop_distance_cdf(h));
    EXPECT_EQ(clustering_cdf(g), clustering_cdf(h));
    EXPECT_NEAR(bucketed_emd(eigenvector_cdf(g), eigenvector_cdf(h)), 0.0, 1e-6);
  }
}

TEST(Cdf, DegreeMatchesRecount) {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_graph(rng, 15, 0.3);
    std::map<Vertex, double> deg;
    for (auto v : g.vertices()) deg[v] = 0;
    for (const auto& e : g.edges()) {
      deg[e.u] += 1;
      deg[e.v] += 1;
    }
    std::vector<double> values;
    for (const auto& [v, d] : deg) values.push_back(d);
    EXPECT_EQ(degree_cdf(g), make_cdf(values));
  }
}

// ---- GCD

TEST(Gcd, SelfIsZero) {
  Rng rng(8);
  const auto g = testing::random_graph(rng, 20, 0.2);
  EXPECT_DOUBLE_EQ(gcd(g, g), 0.0);
  EXPECT_NEAR(gcd(g, testing::random_relabel(g, rng)), 0.0, 1e-12);
}

TEST(Gcd, DifferentGraphs) { EXPECT_GT(gcd(cycle(6), complete(6)), 0.0); }

TEST(Gcd, SymmetricAndBounded) {
  Rng rng(9);
  const auto a = testing::random_graph(rng, 15, 0.3);
  const auto b = testing::random_graph(rng, 15, 0.1);
  const double d = gcd(a, b);
  EXPECT_DOUBLE_EQ(d, gcd(b, a));
  EXPECT_LE(d, std::sqrt(55.0) * 2.0);
}

TEST(Gcd, SpearmanTies) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {10, 20, 30}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 1, 1}, {1, 2, 3}), 0.0);
  EXPECT_EQ(average_ranks({5, 1, 5, 3}), (std::vector<double>{3.5, 1, 3.5, 2}));
}

// ---- isomorphism

TEST(Isomorphism, CycleVersusTwoTriangles) {
  const StaticGraph two({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_FALSE(is_isomorphic(cycle(6), two));
}

TEST(Isomorphism, Relabeled) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const auto g = testing::random_graph(rng, 25, 0.2);
    EXPECT_TRUE(is_isomorphic(g, testing::random_relabel(g, rng)));
  }
}

TEST(Isomorphism, MatchesBruteForce) {
  Rng rng(11);
  int positives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 7);
    const auto a = testing::random_graph(rng, n, 0.5);
    const auto b = bernoulli(rng, 0.5) ? testing::random_relabel(a, rng) : testing::random_graph(rng, n, 0.5);
    const bool expected = testing::brute_force_isomorphic(a, b);
    positives += expected;
    EXPECT_EQ(is_isomorphic(a, b), expected) << trial;
  }
  EXPECT_GT(positives, 50);
}

}  // namespace
}  // namespace thrg
