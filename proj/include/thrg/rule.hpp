#ifndef THRG_RULE_HPP
#define THRG_RULE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "thrg/errors.hpp"

namespace thrg {

/// Rule-local vertex label. 0..k-1 are the externals (in LHS order), k..k+ι-1
/// the internals.
using Label = std::uint32_t;

/// History key of a rule extracted without history (alpha = 0).
inline const std::string kNoHistory = "-";
/// History key of a rule whose parent is the start symbol S (alpha = 1).
inline const std::string kStartHistory = "S";

/// A -> R. The LHS is a nonterminal of arity `lhs_arity` (0 only for S),
/// optionally qualified by the key of the rule that produced it.
struct ProductionRule {
  std::size_t lhs_arity = 0;
  std::string history = kNoHistory;
  std::size_t internal_count = 0;
  std::vector<std::pair<Label, Label>> terminals;  // first < second
  std::vector<std::vector<Label>> nonterminals;    // attachment tuples, ordered
  std::uint64_t count = 1;

  std::size_t label_count() const noexcept { return lhs_arity + internal_count; }

  friend bool operator==(const ProductionRule&, const ProductionRule&) = default;
};

struct CanonicalOptions {
  // Upper bound on candidate labelings (search leaves) examined. Rules whose
  // internal vertices cannot be told apart within this are rejected instead of
  // risking a factorial search.
  std::uint64_t max_search = 1'000'000;
};

struct CanonicalForm {
  std::string key;                      // structural key, history excluded
  ProductionRule rule;                  // relabeled, terminals and nonterminals sorted
  std::vector<Label> relabel;           // old label -> canonical label
  std::vector<std::size_t> nt_source;   // canonical nonterminal index -> original index
};

namespace detail {

inline std::string encode_structure(std::size_t arity, std::size_t internal,
                                    const std::vector<std::pair<Label, Label>>& terminals,
                                    const std::vector<std::vector<Label>>& nonterminals) {
  std::string s = "k" + std::to_string(arity) + "i" + std::to_string(internal) + "t";
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(terminals[i].first) + "-" + std::to_string(terminals[i].second);
  }
  s += 'n';
  for (const auto& tuple : nonterminals) {
    s += '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (i) s += '_';
      s += std::to_string(tuple[i]);
    }
    s += ')';
  }
  return s;
}

inline void validate_labels(const ProductionRule& r) {
  const auto n = r.label_count();
  for (const auto& [a, b] : r.terminals)
    if (a >= n || b >= n || a == b) throw ArgumentError("terminal edge uses an undeclared label or is a loop");
  for (const auto& tuple : r.nonterminals)
    for (auto l : tuple)
      if (l >= n) throw ArgumentError("nonterminal uses an undeclared label");
}

struct Relabeled {
  std::vector<std::pair<Label, Label>> terminals;
  std::vector<std::vector<Label>> nonterminals;
  std::vector<std::size_t> nt_source;
};

inline Relabeled apply_relabel(const ProductionRule& r, const std::vector<Label>& map) {
  Relabeled out;
  out.terminals.reserve(r.terminals.size());
  for (const auto& [a, b] : r.terminals) out.terminals.emplace_back(std::minmax(map[a], map[b]));
  std::sort(out.terminals.begin(), out.terminals.end());
  std::vector<std::pair<std::vector<Label>, std::size_t>> nts;
  nts.reserve(r.nonterminals.size());
  for (std::size_t i = 0; i < r.nonterminals.size(); ++i) {
    std::vector<Label> t;
    t.reserve(r.nonterminals[i].size());
    for (auto l : r.nonterminals[i]) t.push_back(map[l]);
    nts.emplace_back(std::move(t), i);
  }
  std::stable_sort(nts.begin(), nts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [t, i] : nts) {
    out.nonterminals.push_back(std::move(t));
    out.nt_source.push_back(i);
  }
  return out;
}

// Colour refinement over the internal labels, starting from `colour`
// (externals hold their own position, internals values >= arity). New colours
// are ranks of signatures that lead with the old colour, so cell order is
// preserved and depends only on the structure.
inline std::vector<std::size_t> refine_colours(const ProductionRule& r, std::vector<std::size_t> colour) {
  const std::size_t k = r.lhs_arity;
  const std::size_t n = r.label_count();
  std::vector<std::vector<Label>> nbrs(n);
  for (const auto& [a, b] : r.terminals) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidences(n);  // (tuple, position)
  for (std::size_t t = 0; t < r.nonterminals.size(); ++t)
    for (std::size_t p = 0; p < r.nonterminals[t].size(); ++p) incidences[r.nonterminals[t][p]].emplace_back(t, p);

  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (std::size_t v = k; v < n; ++v) {
      auto& s = sig[v];
      s.push_back(colour[v]);
      std::vector<std::size_t> adj;
      for (auto w : nbrs[v]) adj.push_back(colour[w]);
      std::sort(adj.begin(), adj.end());
      s.push_back(adj.size());
      s.insert(s.end(), adj.begin(), adj.end());
      std::vector<std::vector<std::size_t>> inc;
      for (const auto& [t, p] : incidences[v]) {
        std::vector<std::size_t> d{r.nonterminals[t].size(), p};
        for (auto l : r.nonterminals[t]) d.push_back(colour[l]);
        inc.push_back(std::move(d));
      }
      std::sort(inc.begin(), inc.end());
      s.push_back(inc.size());
      for (const auto& d : inc) {
        s.push_back(d.size());
        s.insert(s.end(), d.begin(), d.end());
      }
    }
    std::vector<std::vector<std::size_t>> distinct(sig.begin() + static_cast<std::ptrdiff_t>(k), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = k; v < n; ++v)
      colour[v] = k + static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (distinct.size() == classes) break;
    classes = distinct.size();
  }
  return colour;
}

inline std::vector<std::size_t> refine_colours(const ProductionRule& r) {
  std::vector<std::size_t> colour(r.label_count());
  for (std::size_t i = 0; i < colour.size(); ++i) colour[i] = i < r.lhs_arity ? i : r.lhs_arity;
  return refine_colours(r, std::move(colour));
}

// True when exchanging labels a and b maps the rule onto itself.
inline bool interchangeable(const ProductionRule& r, const Relabeled& identity, Label a, Label b) {
  std::vector<Label> swap(r.label_count());
  std::iota(swap.begin(), swap.end(), Label{0});
  std::swap(swap[a], swap[b]);
  const auto swapped = apply_relabel(r, swap);
  return swapped.terminals == identity.terminals && swapped.nonterminals == identity.nonterminals;
}

}  // namespace detail

/// Canonical labeling of a rule. External labels stay put; internal labels are
/// chosen to minimize the serialized structure over the leaves of an
/// individualization-refinement search: refine colours, and while some cell
/// holds several internals, branch on which of them comes first. Members of a
/// cell that can be swapped without changing the rule lead to the same leaf,
/// so only one per such group is tried. Two rules get the same key iff some
/// bijection of their internal labels maps one onto the other.
inline CanonicalForm canonicalize(const ProductionRule& rule, const CanonicalOptions& options = {}) {
  detail::validate_labels(rule);
  const std::size_t k = rule.lhs_arity;
  const std::size_t n = rule.label_count();

  std::vector<Label> identity_map(n);
  std::iota(identity_map.begin(), identity_map.end(), Label{0});
  const auto identity = detail::apply_relabel(rule, identity_map);

  std::vector<Label> best_map;
  detail::Relabeled best;
  bool have_best = false;
  std::uint64_t leaves = 0;

  auto evaluate = [&](const std::vector<std::size_t>& colour) {
    if (++leaves > options.max_search)
      throw CanonicalizationError("rule with " + std::to_string(n) + " labels needs more than " +
                                  std::to_string(options.max_search) + " candidate labelings");
    std::vector<Label> map(n);
    for (std::size_t v = 0; v < n; ++v) map[v] = static_cast<Label>(colour[v]);
    auto candidate = detail::apply_relabel(rule, map);
    if (!have_best || std::tie(candidate.terminals, candidate.nonterminals) < std::tie(best.terminals, best.nonterminals)) {
      best = std::move(candidate);
      best_map = std::move(map);
      have_best = true;
    }
  };

  std::function<void(std::vector<std::size_t>)> search = [&](std::vector<std::size_t> colour) {
    colour = detail::refine_colours(rule, std::move(colour));
    // First cell (by colour) with more than one internal.
    std::map<std::size_t, std::vector<Label>> cells;
    for (std::size_t v = k; v < n; ++v) cells[colour[v]].push_back(static_cast<Label>(v));
    const std::vector<Label>* target = nullptr;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        break;
      }
    if (!target) {
      evaluate(colour);
      return;
    }
    std::vector<Label> representatives;
    for (auto v : *target) {
      bool twin = false;
      for (auto r : representatives)
        if (detail::interchangeable(rule, identity, r, v)) {
          twin = true;
          break;
        }
      if (!twin) representatives.push_back(v);
    }
    for (auto v : representatives) {
      // v keeps the cell's position, the rest of the cell moves just after it.
      std::vector<std::size_t> next(n);
      for (std::size_t u = 0; u < n; ++u) next[u] = u < k ? u : k + 2 * (colour[u] - k) + (colour[u] == colour[v] && u != v);
      search(std::move(next));
    }
  };
  std::vector<std::size_t> start(n);
  for (std::size_t i = 0; i < n; ++i) start[i] = i < k ? i : k;
  search(std::move(start));

  CanonicalForm out;
  out.rule = rule;
  out.rule.terminals = best.terminals;
  out.rule.nonterminals = best.nonterminals;
  out.relabel = std::move(best_map);
  out.nt_source = std::move(best.nt_source);
  out.key = detail::encode_structure(k, rule.internal_count, out.rule.terminals, out.rule.nonterminals);
  return out;
}

/// Identity of a rule inside a grammar: history plus structure.
inline std::string rule_key(const std::string& history, const std::string& structural_key) {
  return history + "|" + structural_key;
}

}  // namespace thrg

#endif  // THRG_RULE_HPP
