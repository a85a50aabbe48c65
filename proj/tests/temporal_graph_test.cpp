#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "test_support.hpp"
#include "thrg/graph.hpp"
#include "thrg/temporal_graph.hpp"

namespace thrg {
namespace {

std::vector<EdgeEvent> parse(const std::string& text, ColumnConfig cols = {}) {
  std::istringstream in(text);
  return parse_edgelist(in, cols);
}

std::vector<EdgeEvent> timed(std::initializer_list<double> ts) {
  std::vector<EdgeEvent> out;
  std::int64_t i = 0;
  for (double t : ts) {
    out.push_back(EdgeEvent{i, i + 1, t});
    ++i;
  }
  return out;
}

std::vector<std::size_t> bins_of(const TemporalGraph& g) {
  std::vector<std::size_t> out;
  for (const auto& e : g.edges) out.push_back(e.bin);
  return out;
}

TEST(ParseEdgelist, ThreeColumnLines) {
  const auto events = parse("1 2 10\n2 3 11\n1 3 12\n");
  ASSERT_EQ(events.size(), 3u);
  EXPECT_EQ(events[0], (EdgeEvent{1, 2, 10}));
  EXPECT_EQ(events[1], (EdgeEvent{2, 3, 11}));
  EXPECT_EQ(events[2], (EdgeEvent{1, 3, 12}));
}

TEST(ParseEdgelist, CommentsOnly) {
  EXPECT_TRUE(parse("% sym unweighted\n% 3 3 3\n").empty());
}

TEST(ParseEdgelist, KonectFourColumns) {
  const auto events = parse("% header\n5 7 1 1082040961\n");
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (EdgeEvent{5, 7, 1082040961.0}));
}

TEST(ParseEdgelist, MissingTimestampReportsLine) {
  try {
    parse("1 2 3\n% c\n1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseEdgelist, NonNumericField) {
  EXPECT_THROW(parse("a b 3\n"), ParseError);
  EXPECT_THROW(parse("1 2 x\n"), ParseError);
}

TEST(ParseEdgelist, CustomColumns) {
  ColumnConfig cols;
  cols.source = 1;
  cols.target = 2;
  cols.timestamp = 0;
  const auto events = parse("99 4 5\n", cols);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (EdgeEvent{4, 5, 99}));
}

TEST(Simplify, KeepsFirstOccurrence) {
  const auto out = simplify({{1, 2, 5}, {2, 1, 9}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (EdgeEvent{1, 2, 5}));
}

TEST(Simplify, DropsSelfLoops) {
  const auto out = simplify({{3, 3, 1}, {1, 2, 2}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], (EdgeEvent{1, 2, 2}));
}

TEST(Simplify, FirstByTimestampNotByInputOrder) {
  const auto out = simplify({{2, 1, 9}, {1, 2, 5}, {4, 3, 1}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], (EdgeEvent{3, 4, 1}));
  EXPECT_EQ(out[1], (EdgeEvent{1, 2, 5}));
}

TEST(SizeQuantize, OneEdgePerBin) {
  std::vector<EdgeEvent> ev;
  for (int i = 0; i < 100; ++i) ev.push_back(EdgeEvent{i, i + 1, static_cast<double>(i)});
  const auto g = size_quantize(ev, 100);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(g.edges[i].bin, i + 1);
  EXPECT_EQ(g.num_bins(), 100u);
}

TEST(SizeQuantize, CeilChunking) {
  const auto g = size_quantize(timed({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), 4);
  std::map<std::size_t, int> sizes;
  for (auto b : bins_of(g)) ++sizes[b];
  EXPECT_EQ(sizes, (std::map<std::size_t, int>{{1, 3}, {2, 3}, {3, 3}, {4, 1}}));
}

TEST(SizeQuantize, TiesAtBoundarySplit) {
  const auto g = size_quantize(timed({1, 2, 2, 3}), 2);
  EXPECT_EQ(bins_of(g), (std::vector<std::size_t>{1, 1, 2, 2}));
}

TEST(SizeQuantize, RejectsNonPositiveBeta) {
  EXPECT_THROW(size_quantize(timed({1, 2}), 0), ArgumentError);
  EXPECT_THROW(size_quantize(timed({1, 2}), -3), ArgumentError);
}

TEST(SizeQuantize, RejectsUnsortedInput) {
  EXPECT_THROW(size_quantize(timed({5, 1}), 2), ArgumentError);
}

TEST(SizeQuantize, DenseIdsByFirstAppearance) {
  const auto g = size_quantize(simplify({{40, 30, 1}, {30, 10, 2}}), 1);
  EXPECT_EQ(g.num_vertices, 3u);
  EXPECT_EQ(g.labels, (std::vector<std::int64_t>{30, 40, 10}));
}

TEST(TimeQuantize, RightClosedIntervals) {
  EXPECT_EQ(bins_of(time_quantize(timed({0, 50, 100}), 2)), (std::vector<std::size_t>{1, 1, 2}));
}

TEST(TimeQuantize, SingleEdge) {
  EXPECT_EQ(bins_of(time_quantize(timed({7}), 5)), (std::vector<std::size_t>{1}));
}

TEST(TimeQuantize, OnePerInterval) {
  // boundaries 0.75, 1.5, 2.25: the four timestamps fall in four intervals
  EXPECT_EQ(bins_of(time_quantize(timed({0, 1, 2, 3}), 4)), (std::vector<std::size_t>{1, 2, 3, 4}));
}

TEST(TimeQuantize, EmptyIntervalsCompacted) {
  EXPECT_EQ(bins_of(time_quantize(timed({0, 1, 100}), 10)), (std::vector<std::size_t>{1, 1, 2}));
}

TemporalGraph fig1_like() {
  // a=0 b=1 c=2 d=3 e=4 f=5 g=6; bin 4 is the triangle {a, e, g}
  TemporalGraph g;
  g.num_vertices = 7;
  g.labels = {0, 1, 2, 3, 4, 5, 6};
  g.beta = 4;
  g.edges = {{0, 1, 1}, {1, 2, 1}, {2, 3, 2}, {0, 3, 2}, {2, 5, 3}, {3, 5, 3}, {0, 4, 4}, {0, 6, 4}, {4, 6, 4}};
  return g;
}

TEST(Snapshot, FullAndEmpty) {
  const auto g = fig1_like();
  EXPECT_EQ(cumulative_snapshot(g, 4).num_edges(), g.num_edges());
  EXPECT_EQ(cumulative_snapshot(g, 0).num_edges(), 0u);
  EXPECT_TRUE(cumulative_snapshot(g, 0).empty());
}

TEST(Snapshot, DropsLastBin) {
  const auto g = fig1_like();
  const auto s = cumulative_snapshot(g, 3);
  std::vector<Edge> expected;
  for (const auto& e : g.edges)
    if (e.bin <= 3) expected.push_back(Edge{e.u, e.v});
  sort_unique(expected);
  EXPECT_EQ(s.edges(), expected);
  EXPECT_FALSE(s.has_vertex(6));
  EXPECT_FALSE(s.has_vertex(4));
}

TEST(BinInduced, TriangleOnLastBin) {
  const auto s = bin_induced_subgraph(fig1_like(), 4);
  EXPECT_EQ(s.vertices(), (std::vector<Vertex>{0, 4, 6}));
  EXPECT_EQ(s.num_edges(), 3u);
}

TEST(BinInduced, SingleEdgeBin) {
  const auto g = size_quantize(timed({1, 2, 3}), 3);
  const auto s = bin_induced_subgraph(g, 2);
  EXPECT_EQ(s.num_vertices(), 2u);
  EXPECT_EQ(s.num_edges(), 1u);
}

TEST(BinInduced, PartitionOverCorpus) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = testing::random_temporal_graph(seed);
    std::vector<Edge> all;
    std::size_t total = 0;
    for (std::size_t b = 1; b <= g.num_bins(); ++b) {
      const auto s = bin_induced_subgraph(g, static_cast<long long>(b));
      total += s.num_edges();
      all.insert(all.end(), s.edges().begin(), s.edges().end());
    }
    EXPECT_EQ(total, g.num_edges());
    sort_unique(all);
    EXPECT_EQ(all, final_graph(g).edges());
  }
}

TEST(TemporalGraphIO, RoundTrip) {
  const auto g = testing::random_temporal_graph(7);
  std::stringstream ss;
  write_temporal_graph(ss, g);
  const auto back = read_temporal_graph(ss);
  EXPECT_EQ(back.edges, g.edges);
  EXPECT_EQ(back.num_vertices, g.num_vertices);
  EXPECT_EQ(back.beta, g.beta);
}

TEST(TemporalGraphIO, BadLine) {
  std::istringstream in("beta=2 n=3 m=1\n0 9 1\n");
  EXPECT_THROW(read_temporal_graph(in), ParseError);
}

TEST(EdgelistIO, RoundTripWithIsolatedVertex) {
  const StaticGraph g({1, 2, 3, 9}, {Edge{1, 2}, Edge{2, 3}});
  std::stringstream ss;
  write_edgelist(ss, g, {"note"});
  const auto back = read_edgelist(ss);
  EXPECT_EQ(back.num_vertices(), 4u);
  EXPECT_EQ(back.num_edges(), 2u);
}

TEST(StaticGraph, DedupAndLoops) {
  const StaticGraph g({Edge{2, 1}, Edge{1, 2}, Edge{3, 3}});
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(count_components(StaticGraph({1, 2, 5}, {Edge{1, 2}})), 2u);
}

}  // namespace
}  // namespace thrg
