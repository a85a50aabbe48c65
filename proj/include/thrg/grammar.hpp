#ifndef THRG_GRAMMAR_HPP
#define THRG_GRAMMAR_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thrg/cnf.hpp"
#include "thrg/errors.hpp"
#include "thrg/random.hpp"
#include "thrg/rule.hpp"
#include "thrg/tree_decomposition.hpp"

namespace thrg {

struct GrammarMetadata {
  std::string source = "unknown";
  std::size_t beta = 0;
  std::uint64_t seed = 0;
  std::size_t vertices = 0;  // |V| of the graph the grammar came from
  std::size_t edges = 0;

  friend bool operator==(const GrammarMetadata&, const GrammarMetadata&) = default;
};

/// Probabilistic HRG: distinct rules with occurrence counts, keyed by
/// rule_key(history, structural key).
struct Grammar {
  int alpha = 0;
  GrammarMetadata meta;
  std::map<std::string, ProductionRule> rules;

  std::size_t size() const noexcept { return rules.size(); }
  bool empty() const noexcept { return rules.empty(); }

  /// History value carried by the start nonterminal.
  const std::string& start_history() const { return alpha == 0 ? kNoHistory : kStartHistory; }

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

/// Rules that may rewrite the same nonterminal: same arity and history.
using GroupKey = std::pair<std::size_t, std::string>;

inline GroupKey group_of(const ProductionRule& r) { return {r.lhs_arity, r.history}; }

struct RuleGroup {
  std::vector<const ProductionRule*> rules;  // in key order
  std::vector<std::string> keys;
  std::uint64_t total = 0;
};

inline std::map<GroupKey, RuleGroup> rule_groups(const Grammar& g) {
  std::map<GroupKey, RuleGroup> out;
  for (const auto& [key, rule] : g.rules) {
    auto& group = out[group_of(rule)];
    group.rules.push_back(&rule);
    group.keys.push_back(key);
    group.total += rule.count;
  }
  return out;
}

/// count / (sum of counts over rules with the same arity and history).
inline double rule_probability(const Grammar& g, const std::string& key) {
  const auto it = g.rules.find(key);
  if (it == g.rules.end()) throw ArgumentError("rule not in grammar: " + key);
  std::uint64_t total = 0;
  const auto group = group_of(it->second);
  for (const auto& [k, r] : g.rules)
    if (group_of(r) == group) total += r.count;
  return static_cast<double>(it->second.count) / static_cast<double>(total);
}

/// The rule a single tree node induces, with its labels still tied to the
/// node: externals are bag ∩ parent bag and internals the rest, each in
/// ascending vertex order; one nonterminal per child over bag ∩ child bag.
struct NodeRule {
  ProductionRule rule;
  std::vector<Vertex> label_vertex;  // label -> vertex
  std::vector<NodeId> nt_child;      // nonterminal index -> child node
};

inline NodeRule node_rule(const TreeDecomposition& t, NodeId id) {
  const auto& node = t[id];
  if (node.parent == kNoNode) throw ArgumentError("the root has no rule");
  const auto& parent_bag = t[node.parent].bag;
  const Bag externals = detail::bag_intersection(node.bag, parent_bag);
  const Bag internals = detail::bag_difference(node.bag, parent_bag);

  NodeRule out;
  out.label_vertex = externals;
  out.label_vertex.insert(out.label_vertex.end(), internals.begin(), internals.end());
  std::map<Vertex, Label> label_of;
  for (std::size_t i = 0; i < out.label_vertex.size(); ++i) label_of[out.label_vertex[i]] = static_cast<Label>(i);

  auto& r = out.rule;
  r.lhs_arity = externals.size();
  r.internal_count = internals.size();
  for (const auto& e : node.terminals) {
    const auto a = label_of.find(e.u);
    const auto b = label_of.find(e.v);
    if (a == label_of.end() || b == label_of.end())
      throw InvalidDecompositionError("node " + std::to_string(id) + " holds a terminal edge outside its bag");
    r.terminals.emplace_back(std::minmax(a->second, b->second));
  }
  for (auto c : node.children) {
    std::vector<Label> tuple;
    for (auto v : detail::bag_intersection(node.bag, t[c].bag)) tuple.push_back(label_of.at(v));
    r.nonterminals.push_back(std::move(tuple));
    out.nt_child.push_back(c);
  }
  return out;
}

/// One rule per non-root node of a CNF tree decomposition, duplicates merged
/// by canonical key. With alpha = 1 every rule also records the structural
/// key of its parent's rule (kStartHistory below S).
inline Grammar extract_rules(const TreeDecomposition& t, int alpha, const CanonicalOptions& options = {}) {
  if (alpha != 0 && alpha != 1) throw ArgumentError("alpha must be 0 or 1");
  if (const auto problem = cnf_violation(t); !problem.empty()) throw NotCnfError("decomposition not in CNF: " + problem);
  Grammar g;
  g.alpha = alpha;
  std::vector<std::string> structural(t.size());
  for (auto id : t.preorder()) {
    const auto& node = t[id];
    if (node.parent == kNoNode) continue;
    auto canon = canonicalize(node_rule(t, id).rule, options);
    structural[id] = canon.key;
    canon.rule.history = alpha == 0 ? kNoHistory : (node.parent == t.root ? kStartHistory : structural[node.parent]);
    canon.rule.count = 1;
    const auto key = rule_key(canon.rule.history, canon.key);
    auto [it, inserted] = g.rules.emplace(key, canon.rule);
    if (!inserted) ++it->second.count;
  }
  return g;
}

/// Drops history keys and re-merges (the alpha = 0 view of an alpha = 1 grammar).
inline Grammar project_history(const Grammar& g) {
  Grammar out;
  out.alpha = 0;
  out.meta = g.meta;
  for (const auto& [key, rule] : g.rules) {
    ProductionRule r = rule;
    r.history = kNoHistory;
    const auto structural = key.substr(key.find('|') + 1);
    auto [it, inserted] = out.rules.emplace(rule_key(kNoHistory, structural), r);
    if (!inserted) it->second.count += rule.count;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format:
//   thrg-grammar 1
//   alpha=<a> beta=<b> seed=<s> source=<name> vertices=<n> edges=<m> rules=<r>
//   rule lhs=<k> history=<h> internal=<i> terminals=<a-b,...> nonterminals=<(x_y)(z)...> count=<c>
// One rule line per rule in key order. Empty lists are written as nothing
// after '='.

inline void serialize(std::ostream& out, const Grammar& g) {
  std::string source = g.meta.source;
  for (auto& ch : source)
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '=') ch = '_';
  out << "thrg-grammar 1\n";
  out << "alpha=" << g.alpha << " beta=" << g.meta.beta << " seed=" << g.meta.seed << " source=" << source
      << " vertices=" << g.meta.vertices << " edges=" << g.meta.edges << " rules=" << g.rules.size() << '\n';
  for (const auto& [key, r] : g.rules) {
    const auto structure = detail::encode_structure(r.lhs_arity, r.internal_count, r.terminals, r.nonterminals);
    const auto t_pos = structure.find('t');
    const auto n_pos = structure.find('n', t_pos);
    out << "rule lhs=" << r.lhs_arity << " history=" << r.history << " internal=" << r.internal_count
        << " terminals=" << structure.substr(t_pos + 1, n_pos - t_pos - 1) << " nonterminals=" << structure.substr(n_pos + 1)
        << " count=" << r.count << '\n';
  }
}

inline std::string serialize(const Grammar& g) {
  std::ostringstream os;
  serialize(os, g);
  return os.str();
}

namespace detail {

inline std::map<std::string, std::string> key_values(const std::string& line, std::size_t record) {
  std::map<std::string, std::string> kv;
  std::istringstream ss(line);
  for (std::string tok; ss >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (tok == "rule" && kv.empty()) continue;
      throw ParseError(record, "field without '=': " + tok, "record");
    }
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline std::uint64_t to_unsigned(const std::string& s, std::size_t record, const char* field) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || s.front() == '-')
    throw ParseError(record, std::string("invalid ") + field + " '" + s + "'", "record");
  return v;
}

inline std::vector<std::pair<Label, Label>> parse_terminals(const std::string& s, std::size_t record) {
  std::vector<std::pair<Label, Label>> out;
  if (s.empty()) return out;
  std::istringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw ParseError(record, "terminal edge '" + item + "' is not a-b", "record");
    const auto a = static_cast<Label>(to_unsigned(item.substr(0, dash), record, "terminal label"));
    const auto b = static_cast<Label>(to_unsigned(item.substr(dash + 1), record, "terminal label"));
    out.emplace_back(std::minmax(a, b));
  }
  return out;
}

inline std::vector<std::vector<Label>> parse_nonterminals(const std::string& s, std::size_t record) {
  std::vector<std::vector<Label>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw ParseError(record, "nonterminal list must be (a_b)(c)...", "record");
    const auto close = s.find(')', i);
    if (close == std::string::npos) throw ParseError(record, "unterminated nonterminal tuple", "record");
    std::vector<Label> tuple;
    const auto body = s.substr(i + 1, close - i - 1);
    if (!body.empty()) {
      std::istringstream ss(body);
      for (std::string item; std::getline(ss, item, '_');)
        tuple.push_back(static_cast<Label>(to_unsigned(item, record, "nonterminal label")));
    }
    out.push_back(std::move(tuple));
    i = close + 1;
  }
  return out;
}

}  // namespace detail

/// Inverse of serialize. Rules that are not written in canonical labeling are
/// canonicalized, and duplicates are merged.
inline Grammar deserialize(std::istream& in) {
  Grammar g;
  std::string line;
  if (!std::getline(in, line) || line.rfind("thrg-grammar", 0) != 0)
    throw ParseError(0, "missing 'thrg-grammar' header", "record");
  if (!std::getline(in, line)) throw ParseError(0, "missing metadata line", "record");
  auto meta = detail::key_values(line, 0);
  for (const char* field : {"alpha", "beta", "seed", "source", "rules"})
    if (!meta.count(field)) throw ParseError(0, std::string("metadata lacks ") + field, "record");
  g.alpha = static_cast<int>(detail::to_unsigned(meta["alpha"], 0, "alpha"));
  if (g.alpha > 1) throw ParseError(0, "alpha must be 0 or 1", "record");
  g.meta.beta = detail::to_unsigned(meta["beta"], 0, "beta");
  g.meta.seed = detail::to_unsigned(meta["seed"], 0, "seed");
  g.meta.source = meta["source"];
  if (meta.count("vertices")) g.meta.vertices = detail::to_unsigned(meta["vertices"], 0, "vertices");
  if (meta.count("edges")) g.meta.edges = detail::to_unsigned(meta["edges"], 0, "edges");
  const auto declared = detail::to_unsigned(meta["rules"], 0, "rules");

  std::size_t record = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++record;
    if (line.rfind("rule", 0) != 0) throw ParseError(record, "expected a 'rule' record", "record");
    auto kv = detail::key_values(line, record);
    for (const char* field : {"lhs", "history", "internal", "terminals", "nonterminals", "count"})
      if (!kv.count(field)) throw ParseError(record, std::string("missing field ") + field, "record");
    ProductionRule r;
    r.lhs_arity = detail::to_unsigned(kv["lhs"], record, "lhs");
    r.history = kv["history"];
    if (r.history.empty()) throw ParseError(record, "empty history", "record");
    r.internal_count = detail::to_unsigned(kv["internal"], record, "internal");
    r.terminals = detail::parse_terminals(kv["terminals"], record);
    r.nonterminals = detail::parse_nonterminals(kv["nonterminals"], record);
    r.count = detail::to_unsigned(kv["count"], record, "count");
    if (r.count == 0) throw ParseError(record, "count must be positive", "record");
    CanonicalForm canon;
    try {
      canon = canonicalize(r);
    } catch (const std::exception& e) {
      throw ParseError(record, e.what(), "record");
    }
    const auto key = rule_key(r.history, canon.key);
    auto [it, inserted] = g.rules.emplace(key, canon.rule);
    if (!inserted) it->second.count += r.count;
  }
  if (record != declared)
    throw ParseError(record, "header declares " + std::to_string(declared) + " rules, found " + std::to_string(record),
                     "record");
  return g;
}

inline Grammar deserialize(const std::string& text) {
  std::istringstream is(text);
  return deserialize(is);
}

/// FNV-1a of the serialized grammar, hex encoded.
inline std::string grammar_hash(const Grammar& g) {
  static const char* digits = "0123456789abcdef";
  auto h = fnv1a(serialize(g));
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

}  // namespace thrg

#endif  // THRG_GRAMMAR_HPP
