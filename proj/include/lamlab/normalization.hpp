#ifndef LAMLAB_NORMALIZATION_HPP
#define LAMLAB_NORMALIZATION_HPP

// Reduction-graph exploration over alpha-classes, SN verdicts, longest
// reductions and the substitution measures size(sigma,t), eta(sigma,t).

#include <algorithm>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lamlab/reduction.hpp"
#include "lamlab/term.hpp"

namespace lamlab {

inline constexpr std::size_t kDefaultFuel = 100000;

/// Reducts larger than this stop exploration: some non-SN terms reduce along
/// an acyclic chain of ever larger terms, which a node count cannot bound.
inline std::size_t term_size_cap(const Term& root) { return std::max<std::size_t>(512, 16 * root.size()); }

struct GraphEdge {
  std::size_t from;
  Rule rule;
  std::size_t to;
};

/// Nodes are alpha-classes, represented by the first term reached.
struct ReductionGraph {
  std::vector<Term> nodes;
  std::vector<GraphEdge> edges;
  std::size_t root = 0;
  bool complete = false;
};

/// Breadth-first closure of the one-step relation from t. Exploration halts
/// as soon as `fuel` nodes exist or a reduct exceeds term_size_cap(t);
/// `complete` is set only when the frontier empties before that.
inline ReductionGraph explore(const Term& t, RuleSet rules, std::size_t fuel) {
  if (fuel < 1) throw std::invalid_argument("explore: fuel must be at least 1");
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> index;
  const std::size_t cap = term_size_cap(t);
  g.nodes.push_back(t);
  index.emplace(canonical_key(t), 0);
  if (g.nodes.size() >= fuel) return g;

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    Term cur = g.nodes[id];
    for (auto& step : one_step(cur, rules)) {
      auto [it, inserted] = index.try_emplace(canonical_key(step.result), g.nodes.size());
      if (inserted) {
        g.nodes.push_back(std::move(step.result));
        frontier.push_back(it->second);
      }
      // one_step already yields distinct (rule, class) pairs per source.
      g.edges.push_back({id, step.rule, it->second});
      if (inserted && (g.nodes.size() >= fuel || g.nodes.back().size() > cap)) return g;
    }
  }
  g.complete = true;
  return g;
}

struct SnCertified {
  std::size_t eta;
  ReductionGraph graph;
};
struct NotSn {
  /// Node ids from the root into a cycle; the last id repeats an earlier one.
  std::vector<std::size_t> cycle_witness;
  ReductionGraph graph;
};
struct Exhausted {
  std::size_t explored;
  ReductionGraph graph;
};

using SnVerdict = std::variant<SnCertified, NotSn, Exhausted>;

inline bool is_sn(const SnVerdict& v) noexcept { return std::holds_alternative<SnCertified>(v); }
inline bool is_not_sn(const SnVerdict& v) noexcept { return std::holds_alternative<NotSn>(v); }
inline bool is_exhausted(const SnVerdict& v) noexcept { return std::holds_alternative<Exhausted>(v); }

inline const ReductionGraph& verdict_graph(const SnVerdict& v) {
  return std::visit([](const auto& x) -> const ReductionGraph& { return x.graph; }, v);
}

inline std::string verdict_name(const SnVerdict& v) {
  if (is_sn(v)) return "SN";
  if (is_not_sn(v)) return "NotSN";
  return "Exhausted";
}

/// SN when the reachable graph is complete and acyclic; NotSN as soon as a
/// reachable cycle is met; Exhausted when `fuel` nodes exist first or a
/// reduct exceeds term_size_cap(t).
///
/// The graph is built depth-first so that a cycle stops the search early;
/// when SN is returned it is the same closure `explore` computes.
inline SnVerdict decide_sn(const Term& t, RuleSet rules, std::size_t fuel = kDefaultFuel) {
  if (fuel < 1) throw std::invalid_argument("decide_sn: fuel must be at least 1");
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> index;
  const std::size_t cap = term_size_cap(t);
  enum : unsigned char { Fresh, Grey, Black };
  std::vector<unsigned char> colour;
  std::vector<std::size_t> longest;

  g.nodes.push_back(t);
  index.emplace(canonical_key(t), 0);
  colour.push_back(Grey);
  longest.push_back(0);
  if (g.nodes.size() >= fuel) return Exhausted{g.nodes.size(), std::move(g)};

  struct Frame {
    std::size_t node;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  // Expands a node: records its edges, creating successor nodes.
  auto expand = [&](std::size_t id) -> bool {
    Frame f{id, {}, 0};
    Term cur = g.nodes[id];
    for (auto& step : one_step(cur, rules)) {
      auto [it, inserted] = index.try_emplace(canonical_key(step.result), g.nodes.size());
      if (inserted) {
        g.nodes.push_back(std::move(step.result));
        colour.push_back(Fresh);
        longest.push_back(0);
      }
      g.edges.push_back({id, step.rule, it->second});
      f.succ.push_back(it->second);
      if (inserted && (g.nodes.size() >= fuel || g.nodes.back().size() > cap)) return false;
    }
    stack.push_back(std::move(f));
    return true;
  };

  if (!expand(0)) return Exhausted{g.nodes.size(), std::move(g)};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.succ.size()) {
      std::size_t s = f.succ[f.next++];
      if (colour[s] == Grey) {
        std::vector<std::size_t> witness;
        for (const auto& fr : stack) witness.push_back(fr.node);
        witness.push_back(s);
        return NotSn{std::move(witness), std::move(g)};
      }
      if (colour[s] == Fresh) {
        colour[s] = Grey;
        if (!expand(s)) return Exhausted{g.nodes.size(), std::move(g)};
      }
      continue;
    }
    std::size_t best = 0;
    for (std::size_t s : f.succ) best = std::max(best, longest[s] + 1);
    longest[f.node] = best;
    colour[f.node] = Black;
    stack.pop_back();
  }
  g.complete = true;
  return SnCertified{longest[0], std::move(g)};
}

class NormalizationError : public std::runtime_error {
 public:
  NormalizationError(const std::string& what, bool exhausted)
      : std::runtime_error(what), exhausted_(exhausted) {}
  /// True when the budget ran out, false when the term is certified non-SN.
  bool exhausted() const noexcept { return exhausted_; }

 private:
  bool exhausted_;
};

/// Length of the longest reduction from t.
inline std::size_t eta(const Term& t, RuleSet rules, std::size_t fuel = kDefaultFuel) {
  SnVerdict v = decide_sn(t, rules, fuel);
  if (auto* sn = std::get_if<SnCertified>(&v)) return sn->eta;
  if (is_not_sn(v)) throw NormalizationError("term is not strongly normalizing", false);
  throw NormalizationError("fuel exhausted before the reduction graph closed", true);
}

/// Sum over x in dom(sigma) of nb(t,x) * size(sigma(x)).
inline std::size_t size_sigma(const SubstitutionMap& sigma, const Term& t) {
  std::size_t total = 0;
  for (const auto& [x, u] : sigma) total += nb_occurrences(t, x) * u.size();
  return total;
}

/// Sum over x in dom(sigma) of nb(t,x) * eta(sigma(x)). Every image must be
/// certified SN.
inline std::size_t eta_sigma(const SubstitutionMap& sigma, const Term& t, RuleSet rules,
                             std::size_t fuel = kDefaultFuel) {
  std::size_t total = 0;
  for (const auto& [x, u] : sigma) total += nb_occurrences(t, x) * eta(u, rules, fuel);
  return total;
}

}  // namespace lamlab

#endif  // LAMLAB_NORMALIZATION_HPP
