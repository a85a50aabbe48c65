#ifndef THRG_TEMPORAL_GRAPH_HPP
#define THRG_TEMPORAL_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/graph.hpp"

namespace thrg {

/// One raw interaction as read from a file. Labels are the source file's ids.
struct EdgeEvent {
  std::int64_t u = 0;
  std::int64_t v = 0;
  double timestamp = 0.0;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Column positions (0-based) of an edgelist. With no timestamp column set, a
/// line with four or more fields uses the fourth (KONECT "u v weight time") and
/// a three-field line uses the third.
struct ColumnConfig {
  std::size_t source = 0;
  std::size_t target = 1;
  std::optional<std::size_t> timestamp;
};

inline std::vector<EdgeEvent> parse_edgelist(std::istream& in, const ColumnConfig& columns = {}) {
  std::vector<EdgeEvent> events;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    ++line_no;
    fields.clear();
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) fields.push_back(std::move(tok));
    if (fields.empty() || fields.front().front() == '%' || fields.front().front() == '#') continue;

    std::size_t ts_col = columns.timestamp ? *columns.timestamp : (fields.size() >= 4 ? 3 : 2);
    const std::size_t needed = std::max({columns.source, columns.target, ts_col}) + 1;
    if (fields.size() < needed)
      throw ParseError(line_no, "expected at least " + std::to_string(needed) + " fields, found " +
                                    std::to_string(fields.size()));

    auto parse_id = [&](const std::string& tok) {
      std::size_t pos = 0;
      long long value = 0;
      try {
        value = std::stoll(tok, &pos);
      } catch (const std::exception&) {
        throw ParseError(line_no, "non-numeric vertex id '" + tok + "'");
      }
      if (pos != tok.size()) throw ParseError(line_no, "non-numeric vertex id '" + tok + "'");
      return static_cast<std::int64_t>(value);
    };
    auto parse_time = [&](const std::string& tok) {
      std::size_t pos = 0;
      double value = 0;
      try {
        value = std::stod(tok, &pos);
      } catch (const std::exception&) {
        throw ParseError(line_no, "non-numeric timestamp '" + tok + "'");
      }
      if (pos != tok.size() || !std::isfinite(value)) throw ParseError(line_no, "non-numeric timestamp '" + tok + "'");
      return value;
    };
    events.push_back(EdgeEvent{parse_id(fields[columns.source]), parse_id(fields[columns.target]),
                               parse_time(fields[ts_col])});
  }
  return events;
}

/// Canonicalizes undirected pairs, drops self-loops and keeps only the first
/// interaction of every pair. Output is ordered by (timestamp, input order).
inline std::vector<EdgeEvent> simplify(const std::vector<EdgeEvent>& events) {
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return events[a].timestamp < events[b].timestamp; });

  std::map<std::pair<std::int64_t, std::int64_t>, bool> seen;
  std::vector<EdgeEvent> out;
  for (auto i : order) {
    const auto& e = events[i];
    if (e.u == e.v) continue;
    const auto key = std::minmax(e.u, e.v);
    if (!seen.emplace(key, true).second) continue;
    out.push_back(EdgeEvent{key.first, key.second, e.timestamp});
  }
  return out;
}

struct TemporalEdge {
  Vertex u = 0;
  Vertex v = 0;
  std::size_t bin = 0;  // 1-based

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Cumulative simple undirected graph whose edges carry 1-based bin indices.
/// Vertices are dense 0..n-1; labels[v] is the id used by the source file.
/// Edges are ordered by bin, and bins cover 1..num_bins() without gaps.
struct TemporalGraph {
  std::size_t num_vertices = 0;
  std::vector<std::int64_t> labels;
  std::vector<TemporalEdge> edges;
  std::size_t beta = 0;
  std::size_t original_event_count = 0;

  std::size_t num_edges() const noexcept { return edges.size(); }

  /// Number of non-empty bins (β' <= β).
  std::size_t num_bins() const noexcept { return edges.empty() ? 0 : edges.back().bin; }

  friend bool operator==(const TemporalGraph&, const TemporalGraph&) = default;
};

namespace detail {

// Assigns dense ids in order of first appearance and attaches bins.
inline TemporalGraph build_temporal(const std::vector<EdgeEvent>& events, const std::vector<std::size_t>& bins,
                                    std::size_t beta) {
  TemporalGraph g;
  g.beta = beta;
  g.original_event_count = events.size();
  std::map<std::int64_t, Vertex> ids;
  auto id_of = [&](std::int64_t label) {
    auto [it, inserted] = ids.emplace(label, static_cast<Vertex>(g.labels.size()));
    if (inserted) g.labels.push_back(label);
    return it->second;
  };
  g.edges.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Vertex a = id_of(events[i].u);
    const Vertex b = id_of(events[i].v);
    const auto e = make_edge(a, b);
    g.edges.push_back(TemporalEdge{e.u, e.v, bins[i]});
  }
  g.num_vertices = g.labels.size();
  return g;
}

inline void require_simplified(const std::vector<EdgeEvent>& events) {
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].timestamp < events[i - 1].timestamp)
      throw ArgumentError("events must be simplified (sorted by timestamp) before quantization");
}

}  // namespace detail

/// Cuts the time-ordered events into chunks of ceil(m / beta) edges; the last
/// chunk takes the remainder. Ties in timestamp keep input order.
inline TemporalGraph size_quantize(const std::vector<EdgeEvent>& events, long long beta) {
  if (beta <= 0) throw ArgumentError("beta must be positive");
  detail::require_simplified(events);
  const std::size_t m = events.size();
  const std::size_t b = static_cast<std::size_t>(beta);
  const std::size_t chunk = m == 0 ? 1 : (m + b - 1) / b;
  std::vector<std::size_t> bins(m);
  for (std::size_t i = 0; i < m; ++i) bins[i] = i / chunk + 1;
  return detail::build_temporal(events, bins, b);
}

/// Equal-width intervals over [t_min, t_max]. Interval k covers (t_{k-1}, t_k]
/// and the first one also includes t_min, so a timestamp sitting exactly on a
/// boundary belongs to the earlier interval. Empty intervals are compacted out
/// so bins stay contiguous.
inline TemporalGraph time_quantize(const std::vector<EdgeEvent>& events, long long beta) {
  if (beta <= 0) throw ArgumentError("beta must be positive");
  detail::require_simplified(events);
  const std::size_t m = events.size();
  const std::size_t b = static_cast<std::size_t>(beta);
  std::vector<std::size_t> raw(m, 0);
  if (m > 0) {
    const double t0 = events.front().timestamp;
    const double span = events.back().timestamp - t0;
    for (std::size_t i = 0; i < m; ++i) {
      if (span <= 0) break;
      const double pos = (events[i].timestamp - t0) / span * static_cast<double>(b);
      const auto upper = static_cast<std::size_t>(std::ceil(pos));
      raw[i] = std::min(b, std::max<std::size_t>(1, upper)) - 1;
    }
  }
  std::vector<std::size_t> bins(m);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0 || raw[i] != raw[i - 1]) ++next;
    bins[i] = next;
  }
  return detail::build_temporal(events, bins, b);
}

/// All edges with bin <= b and their endpoints.
inline StaticGraph cumulative_snapshot(const TemporalGraph& g, long long b) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges)
    if (static_cast<long long>(e.bin) <= b) edges.push_back(Edge{e.u, e.v});
  return StaticGraph(std::move(edges));
}

/// Exactly the edges with bin == b and their endpoints.
inline StaticGraph bin_induced_subgraph(const TemporalGraph& g, long long b) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges)
    if (static_cast<long long>(e.bin) == b) edges.push_back(Edge{e.u, e.v});
  return StaticGraph(std::move(edges));
}

inline StaticGraph final_graph(const TemporalGraph& g) {
  return cumulative_snapshot(g, static_cast<long long>(g.num_bins()));
}

/// "beta=<b> n=<n> m=<m>" header followed by one "u v bin" line per edge.
inline void write_temporal_graph(std::ostream& out, const TemporalGraph& g) {
  out << "beta=" << g.beta << " n=" << g.num_vertices << " m=" << g.edges.size() << '\n';
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.bin << '\n';
}

inline TemporalGraph read_temporal_graph(std::istream& in) {
  TemporalGraph g;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  std::size_t m = 0;
  {
    std::istringstream header(line);
    std::map<std::string, std::size_t> kv;
    for (std::string tok; header >> tok;) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError(1, "malformed header field '" + tok + "'");
      try {
        kv[tok.substr(0, eq)] = std::stoull(tok.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError(1, "malformed header field '" + tok + "'");
      }
    }
    if (!kv.count("beta") || !kv.count("n") || !kv.count("m")) throw ParseError(1, "header needs beta, n and m");
    g.beta = kv["beta"];
    g.num_vertices = kv["n"];
    m = kv["m"];
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    long long u = 0, v = 0, bin = 0;
    if (!(ss >> u)) continue;
    if (!(ss >> v >> bin) || u < 0 || v < 0 || bin < 1 || static_cast<std::size_t>(std::max(u, v)) >= g.num_vertices)
      throw ParseError(line_no, "expected 'u v bin' with 0 <= u, v < n and bin >= 1");
    const auto e = make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    g.edges.push_back(TemporalEdge{e.u, e.v, static_cast<std::size_t>(bin)});
  }
  if (g.edges.size() != m) throw ParseError(line_no, "header declares m=" + std::to_string(m) + " but found " +
                                                         std::to_string(g.edges.size()) + " edges");
  g.labels.resize(g.num_vertices);
  std::iota(g.labels.begin(), g.labels.end(), std::int64_t{0});
  g.original_event_count = m;
  return g;
}

/// Number of connected components of a static graph (isolated vertices count).
inline std::size_t count_components(const StaticGraph& g) {
  const auto c = compact(g);
  std::vector<char> seen(c.size(), 0);
  std::size_t components = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < c.size(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto y : c.adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
  }
  return components;
}

}  // namespace thrg

#endif  // THRG_TEMPORAL_GRAPH_HPP
