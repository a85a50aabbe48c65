#ifndef THRG_GENERATOR_HPP
#define THRG_GENERATOR_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thrg/errors.hpp"
#include "thrg/grammar.hpp"
#include "thrg/graph.hpp"
#include "thrg/random.hpp"
#include "thrg/rule.hpp"
#include "thrg/tree_decomposition.hpp"

namespace thrg {

struct GenerateOptions {
  std::size_t max_applications = 0;  // 0 selects 10 * n + 1000
  bool record_derivation = false;
};

struct GenerationResult {
  StaticGraph graph;
  std::size_t applications = 0;
  std::size_t merged_edges = 0;  // terminal edges recreated by a later rule
  std::string derivation;        // nested "(rule children...)" when recorded
};

/// Grammar indexed for sampling: rules grouped by (arity, history) and each
/// nonterminal of each rule resolved to the group that rewrites it.
class CompiledGrammar {
 public:
  struct Rule {
    const ProductionRule* rule = nullptr;
    std::string key;
    double probability = 0.0;
    std::vector<std::size_t> child_groups;  // per nonterminal; kMissing if no rule rewrites it
  };
  struct Group {
    GroupKey key;
    std::vector<std::size_t> rules;  // indices into rules()
    std::uint64_t total = 0;
  };
  static constexpr std::size_t kMissing = static_cast<std::size_t>(-1);

  explicit CompiledGrammar(const Grammar& g) : grammar_(&g) {
    std::map<GroupKey, std::size_t> index;
    for (const auto& [key, rule] : g.rules) {
      const auto gk = group_of(rule);
      auto it = index.find(gk);
      if (it == index.end()) {
        it = index.emplace(gk, groups_.size()).first;
        groups_.push_back(Group{gk, {}, 0});
      }
      groups_[it->second].rules.push_back(rules_.size());
      groups_[it->second].total += rule.count;
      rules_.push_back(Rule{&rule, key, 0.0, {}});
    }
    for (auto& grp : groups_)
      for (auto r : grp.rules)
        rules_[r].probability = static_cast<double>(rules_[r].rule->count) / static_cast<double>(grp.total);
    for (auto& r : rules_) {
      const auto child_history = spawned_history(r);
      for (const auto& tuple : r.rule->nonterminals) {
        const auto it = index.find(GroupKey{tuple.size(), child_history});
        r.child_groups.push_back(it == index.end() ? kMissing : it->second);
      }
    }
    const auto it = index.find(GroupKey{0, g.start_history()});
    start_ = it == index.end() ? kMissing : it->second;
  }

  const Grammar& grammar() const noexcept { return *grammar_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  std::size_t start_group() const noexcept { return start_; }

 private:
  std::string spawned_history(const Rule& r) const {
    if (grammar_->alpha == 0) return kNoHistory;
    return r.key.substr(r.key.find('|') + 1);
  }

  const Grammar* grammar_;
  std::vector<Rule> rules_;
  std::vector<Group> groups_;
  std::size_t start_ = kMissing;
};

namespace detail {

/// Growing graph plus the nonterminal sites still to be rewritten.
struct DerivationState {
  struct Site {
    std::vector<Vertex> vertices;
    std::size_t group = 0;
    std::size_t target = 0;  // vertices this site must add (exact sampling only)
    std::size_t trace = 0;   // node in the derivation trace
  };

  Vertex next_vertex = 0;
  std::set<Edge> edges;
  std::vector<Site> active;
  std::size_t applications = 0;
  std::size_t merged_edges = 0;

  bool tracing = false;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> trace_nodes;  // (rule, children)

  std::size_t new_trace_node() {
    trace_nodes.emplace_back(CompiledGrammar::kMissing, std::vector<std::size_t>{});
    return trace_nodes.size() - 1;
  }

  // Rewrites `site` with rule r; returns the index of the first new site.
  std::size_t apply(const CompiledGrammar& cg, std::size_t r, const Site& site) {
    const auto& rule = *cg.rules()[r].rule;
    std::vector<Vertex> map(rule.label_count());
    for (std::size_t i = 0; i < rule.lhs_arity; ++i) map[i] = site.vertices[i];
    for (std::size_t i = rule.lhs_arity; i < map.size(); ++i) map[i] = next_vertex++;
    for (const auto& [a, b] : rule.terminals)
      if (!edges.insert(make_edge(map[a], map[b])).second) ++merged_edges;
    const std::size_t first = active.size();
    for (std::size_t i = 0; i < rule.nonterminals.size(); ++i) {
      Site child;
      for (auto l : rule.nonterminals[i]) child.vertices.push_back(map[l]);
      child.group = cg.rules()[r].child_groups[i];
      active.push_back(std::move(child));
    }
    if (tracing) {
      auto& node = trace_nodes[site.trace];
      node.first = r;
      for (std::size_t i = first; i < active.size(); ++i) {
        active[i].trace = new_trace_node();
        trace_nodes[site.trace].second.push_back(active[i].trace);
      }
    }
    ++applications;
    return first;
  }

  std::string trace_string(std::size_t node = 0) const {
    const auto& [rule, children] = trace_nodes[node];
    std::string s = "(" + std::to_string(rule);
    for (auto c : children) s += " " + trace_string(c);
    return s + ")";
  }

  GenerationResult finish() const {
    GenerationResult out;
    std::vector<Vertex> vertices(next_vertex);
    for (Vertex v = 0; v < next_vertex; ++v) vertices[v] = v;
    out.graph = StaticGraph(std::move(vertices), std::vector<Edge>(edges.begin(), edges.end()));
    out.applications = applications;
    out.merged_edges = merged_edges;
    if (tracing && !trace_nodes.empty()) out.derivation = trace_string();
    return out;
  }
};

inline std::size_t pick_weighted(Rng& rng, const std::vector<double>& weights, double total) {
  double u = uniform_real(rng) * total;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last_positive = i;
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return last_positive;
}

}  // namespace detail

/// Rebuilds the graph a decomposition encodes by applying each node's rule
/// top-down at the nonterminal its parent created. Works before and after
/// CNF normalization; the result is isomorphic to the decomposed graph.
inline StaticGraph replay(const TreeDecomposition& t) {
  const StaticGraph source(all_terminals(t));
  if (const auto report = validate_tree_decomposition(t, source); !report.valid())
    throw InvalidDecompositionError("cannot replay an invalid decomposition: " + report.describe());

  Vertex next = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<NodeId, std::vector<Vertex>>> stack;
  for (auto c : t[t.root].children) stack.emplace_back(c, std::vector<Vertex>{});
  while (!stack.empty()) {
    auto [id, site] = std::move(stack.back());
    stack.pop_back();
    const auto local = node_rule(t, id);
    const auto canon = canonicalize(local.rule);
    const auto& rule = canon.rule;
    std::vector<Vertex> map(rule.label_count());
    for (std::size_t i = 0; i < rule.lhs_arity; ++i) map[i] = site[i];
    for (std::size_t i = rule.lhs_arity; i < map.size(); ++i) map[i] = next++;
    for (const auto& [a, b] : rule.terminals) edges.push_back(make_edge(map[a], map[b]));
    for (std::size_t i = 0; i < rule.nonterminals.size(); ++i) {
      std::vector<Vertex> child_site;
      for (auto l : rule.nonterminals[i]) child_site.push_back(map[l]);
      stack.emplace_back(local.nt_child[canon.nt_source[i]], std::move(child_site));
    }
  }
  return StaticGraph(std::move(edges));
}

/// Stochastic derivation from S: rewrite a uniformly chosen open nonterminal
/// with a rule drawn in proportion to its count until none remain.
inline GenerationResult generate_free(const CompiledGrammar& cg, Rng& rng, GenerateOptions options = {}) {
  if (cg.start_group() == CompiledGrammar::kMissing) throw ArgumentError("grammar has no start rule");
  const std::size_t limit =
      options.max_applications ? options.max_applications : 10 * cg.grammar().meta.vertices + 1000;
  detail::DerivationState state;
  state.tracing = options.record_derivation;
  detail::DerivationState::Site start;
  start.group = cg.start_group();
  if (state.tracing) start.trace = state.new_trace_node();
  state.active.push_back(std::move(start));

  while (!state.active.empty()) {
    if (state.applications >= limit) throw NonterminationError(state.applications);
    const auto pick = uniform_index(rng, state.active.size());
    auto site = std::move(state.active[pick]);
    state.active[pick] = std::move(state.active.back());
    state.active.pop_back();
    if (site.group == CompiledGrammar::kMissing)
      throw DerivationStuckError("no rule rewrites a nonterminal of arity " + std::to_string(site.vertices.size()));
    const auto& group = cg.groups()[site.group];
    auto draw = uniform_index(rng, group.total);
    std::size_t chosen = group.rules.back();
    for (auto r : group.rules) {
      const auto c = cg.rules()[r].rule->count;
      if (draw < c) {
        chosen = r;
        break;
      }
      draw -= c;
    }
    state.apply(cg, chosen, site);
  }
  return state.finish();
}

inline GenerationResult generate_free(const Grammar& g, Rng& rng, GenerateOptions options = {}) {
  return generate_free(CompiledGrammar(g), rng, options);
}

/// w[group][n]: probability that a nonterminal of the group derives exactly
/// n new vertices. Requires CNF so every rule adds a vertex or splits into
/// two non-empty subderivations, which makes w[.][0] = 0 and keeps the
/// recursion well-founded.
class SizeWeightTable {
 public:
  SizeWeightTable(const CompiledGrammar& cg, std::size_t n_max) : n_max_(n_max) {
    if (n_max < 1) throw ArgumentError("n_max must be at least 1");
    for (const auto& r : cg.rules()) {
      const auto nts = r.rule->nonterminals.size();
      if (nts > 2 || (r.rule->internal_count == 0 && nts != 2))
        throw NotCnfError("rule " + r.key + " is not in CNF");
    }
    const auto& rules = cg.rules();
    w_.assign(cg.groups().size(), std::vector<double>(n_max + 1, 0.0));
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (std::size_t g = 0; g < cg.groups().size(); ++g) {
        double total = 0.0;
        for (auto r : cg.groups()[g].rules) total += rules[r].probability * rule_weight(rules[r], n);
        w_[g][n] = total;
      }
    }
    start_ = cg.start_group();
  }

  /// Weight of a size-n derivation starting with one specific rule.
  double rule_weight(const CompiledGrammar::Rule& r, std::size_t n) const {
    const auto iota = r.rule->internal_count;
    const auto& kids = r.child_groups;
    if (n < iota) return 0.0;
    const auto rest = n - iota;
    switch (kids.size()) {
      case 0:
        return rest == 0 ? 1.0 : 0.0;
      case 1:
        return kids[0] == CompiledGrammar::kMissing ? 0.0 : at(kids[0], rest);
      default: {
        if (kids[0] == CompiledGrammar::kMissing || kids[1] == CompiledGrammar::kMissing) return 0.0;
        double s = 0.0;
        for (std::size_t m = 1; m + 1 <= rest; ++m) s += at(kids[0], m) * at(kids[1], rest - m);
        return s;
      }
    }
  }

  double at(std::size_t group, std::size_t n) const { return n <= n_max_ ? w_[group][n] : 0.0; }

  double weight(const CompiledGrammar& cg, const GroupKey& key, std::size_t n) const {
    for (std::size_t g = 0; g < cg.groups().size(); ++g)
      if (cg.groups()[g].key == key) return at(g, n);
    return 0.0;
  }

  double start(std::size_t n) const { return start_ == CompiledGrammar::kMissing ? 0.0 : at(start_, n); }
  std::size_t n_max() const noexcept { return n_max_; }

 private:
  std::size_t n_max_;
  std::size_t start_ = CompiledGrammar::kMissing;
  std::vector<std::vector<double>> w_;
};

/// Samples derivations conditioned on producing exactly n vertices. Each site
/// carries its remaining size; the rule (and, for binary rules, the size
/// split) is drawn in proportion to its share of the table weight.
class ExactSampler {
 public:
  ExactSampler(const Grammar& g, std::size_t n) : cg_(g), table_(cg_, std::max<std::size_t>(n, 1)), n_(n) {
    if (!(table_.start(n) > 0.0)) throw UnreachableSizeError(n, nearest_reachable(g, n));
  }

  const CompiledGrammar& compiled() const noexcept { return cg_; }
  const SizeWeightTable& table() const noexcept { return table_; }

  GenerationResult sample(Rng& rng, GenerateOptions options = {}) const {
    detail::DerivationState state;
    state.tracing = options.record_derivation;
    detail::DerivationState::Site start;
    start.group = cg_.start_group();
    start.target = n_;
    if (state.tracing) start.trace = state.new_trace_node();
    state.active.push_back(std::move(start));

    std::vector<double> weights;
    std::vector<std::pair<std::size_t, std::size_t>> choices;  // (rule, left size)
    while (!state.active.empty()) {
      auto site = std::move(state.active.back());
      state.active.pop_back();
      const auto& group = cg_.groups()[site.group];
      weights.clear();
      choices.clear();
      for (auto r : group.rules) {
        const auto& rule = cg_.rules()[r];
        const auto iota = rule.rule->internal_count;
        if (site.target < iota) continue;
        const auto rest = site.target - iota;
        if (rule.child_groups.size() == 2) {
          if (rule.child_groups[0] == CompiledGrammar::kMissing || rule.child_groups[1] == CompiledGrammar::kMissing)
            continue;
          for (std::size_t m = 1; m + 1 <= rest; ++m) {
            const double w = rule.probability * table_.at(rule.child_groups[0], m) *
                             table_.at(rule.child_groups[1], rest - m);
            if (w > 0) {
              weights.push_back(w);
              choices.emplace_back(r, m);
            }
          }
        } else {
          const double w = rule.probability * table_.rule_weight(rule, site.target);
          if (w > 0) {
            weights.push_back(w);
            choices.emplace_back(r, 0);
          }
        }
      }
      double total = 0;
      for (auto w : weights) total += w;
      if (weights.empty() || !(total > 0))
        throw DerivationStuckError("no rule can fill a site of size " + std::to_string(site.target));
      const auto [r, left] = choices[detail::pick_weighted(rng, weights, total)];
      const auto& rule = cg_.rules()[r];
      const auto first = state.apply(cg_, r, site);
      const auto rest = site.target - rule.rule->internal_count;
      if (rule.child_groups.size() == 1) {
        state.active[first].target = rest;
      } else if (rule.child_groups.size() == 2) {
        state.active[first].target = left;
        state.active[first + 1].target = rest - left;
      }
    }
    return state.finish();
  }

  /// Up to two reachable sizes on each side of n (searching to 2n + 16).
  static std::vector<std::size_t> nearest_reachable(const Grammar& g, std::size_t n) {
    const CompiledGrammar cg(g);
    if (cg.start_group() == CompiledGrammar::kMissing) return {};
    const SizeWeightTable wide(cg, 2 * n + 16);
    std::vector<std::size_t> below, above;
    for (std::size_t k = n; k-- > 1 && below.size() < 2;)
      if (wide.start(k) > 0) below.push_back(k);
    for (std::size_t k = n + 1; k <= wide.n_max() && above.size() < 2; ++k)
      if (wide.start(k) > 0) above.push_back(k);
    std::vector<std::size_t> out(below.rbegin(), below.rend());
    out.insert(out.end(), above.begin(), above.end());
    return out;
  }

 private:
  CompiledGrammar cg_;
  SizeWeightTable table_;
  std::size_t n_;
};

inline GenerationResult generate_exact(const Grammar& g, std::size_t n, Rng& rng, GenerateOptions options = {}) {
  return ExactSampler(g, n).sample(rng, options);
}

/// generate_free until the graph has exactly n vertices. Runaway derivations
/// count as rejected attempts.
inline GenerationResult generate_rejection(const CompiledGrammar& cg, std::size_t n, Rng& rng,
                                           std::size_t max_attempts = 10'000, GenerateOptions options = {}) {
  if (options.max_applications == 0) options.max_applications = 10 * n + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    try {
      auto result = generate_free(cg, rng, options);
      if (result.graph.num_vertices() == n) return result;
    } catch (const NonterminationError&) {
    }
  }
  throw MaxAttemptsError(max_attempts);
}

inline GenerationResult generate_rejection(const Grammar& g, std::size_t n, Rng& rng, std::size_t max_attempts = 10'000,
                                           GenerateOptions options = {}) {
  return generate_rejection(CompiledGrammar(g), n, rng, max_attempts, options);
}

}  // namespace thrg

#endif  // THRG_GENERATOR_HPP
