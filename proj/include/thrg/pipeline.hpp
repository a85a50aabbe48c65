#ifndef THRG_PIPELINE_HPP
#define THRG_PIPELINE_HPP

#include <cstdint>
#include <fstream>
#include <string>

#include "thrg/cnf.hpp"
#include "thrg/grammar.hpp"
#include "thrg/random.hpp"
#include "thrg/static_decomposition.hpp"
#include "thrg/temporal_decomposition.hpp"
#include "thrg/temporal_graph.hpp"

namespace thrg {

enum class Binning { size, time };

inline TemporalGraph quantize(const std::vector<EdgeEvent>& simplified, long long beta, Binning binning) {
  return binning == Binning::size ? size_quantize(simplified, beta) : time_quantize(simplified, beta);
}

/// Reads and simplifies a timestamped edgelist file.
inline std::vector<EdgeEvent> load_events(const std::string& path, const ColumnConfig& columns = {},
                                          std::size_t* raw_count = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto raw = parse_edgelist(in, columns);
  if (raw_count) *raw_count = raw.size();
  return simplify(raw);
}

struct TemporalExtraction {
  TreeDecomposition raw;         // straight from the de-evolution
  TreeDecomposition normalized;  // pruned and binarized
  Grammar grammar;
  Width temporal_width;
  Width static_width;

  /// Temporal width over static min-fill width; large values point at late bridges.
  double late_bridge_ratio() const {
    if (static_width.degenerate || static_width.value == 0) return 0.0;
    return static_cast<double>(temporal_width.value) / static_cast<double>(static_width.value);
  }
};

/// Temporal decomposition -> prune -> binarize -> rule extraction.
inline TemporalExtraction extract_temporal_grammar(const TemporalGraph& g, int alpha, std::uint64_t seed,
                                                   const std::string& source = "unknown",
                                                   bool with_static_width = true) {
  TemporalExtraction out;
  Rng rng(seed);
  out.raw = temporal_tree_decomposition(g, rng);
  out.normalized = normalize_cnf(out.raw);
  out.grammar = extract_rules(out.normalized, alpha);
  const auto final = final_graph(g);
  out.grammar.meta = GrammarMetadata{source, g.beta, seed, final.num_vertices(), final.num_edges()};
  out.temporal_width = width(out.raw);
  if (with_static_width) out.static_width = width(static_tree_decomposition(final));
  return out;
}

/// Grammar of the static pHRG baseline (min-fill decomposition, alpha = 0).
inline Grammar extract_static_grammar(const StaticGraph& g, const std::string& source = "unknown") {
  auto grammar = extract_rules(normalize_cnf(static_tree_decomposition(g)), 0);
  grammar.meta = GrammarMetadata{source, 0, 0, g.num_vertices(), g.num_edges()};
  return grammar;
}

}  // namespace thrg

#endif  // THRG_PIPELINE_HPP
