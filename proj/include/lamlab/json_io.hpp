#ifndef LAMLAB_JSON_IO_HPP
#define LAMLAB_JSON_IO_HPP

// JSON and DOT renderings of terms, graphs, verdicts and derivations.

#include <sstream>
#include <string>

#include "json.hpp"
#include "lamlab/derivation.hpp"
#include "lamlab/normalization.hpp"
#include "lamlab/syntax.hpp"
#include "lamlab/types.hpp"

namespace lamlab {

using json = nlohmann::ordered_json;

/// {"var":x} | {"lam":x,"body":...} | {"app":[fun,arg]}
inline json term_ast_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return {{"var", t.name()}};
    case Term::Kind::Abs: return {{"lam", t.name()}, {"body", term_ast_json(t.body())}};
    case Term::Kind::App: return {{"app", json::array({term_ast_json(t.fun()), term_ast_json(t.arg())})}};
  }
  return {};
}

inline json context_json(const Context& ctx) {
  json out = json::object();
  for (const auto& [x, a] : ctx) out[x] = to_string(a);
  return out;
}

/// {rule, ctx, term, type, premises}
inline json derivation_json(const Derivation& d) {
  json ps = json::array();
  for (const auto& p : d.premises) ps.push_back(derivation_json(p));
  return {{"rule", typing_rule_name(d.rule)},
          {"ctx", context_json(d.context())},
          {"term", to_string(d.subject())},
          {"type", to_string(d.type())},
          {"premises", std::move(ps)}};
}

/// {nodes:[{id,term}], edges:[{from,rule,to}], root, complete}
inline json graph_json(const ReductionGraph& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    nodes.push_back({{"id", i}, {"term", to_string(g.nodes[i])}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"from", e.from}, {"rule", rule_name(e.rule)}, {"to", e.to}});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"root", g.root},
          {"complete", g.complete}};
}

inline json verdict_json(const SnVerdict& v, bool with_graph = false) {
  json out = {{"verdict", verdict_name(v)}};
  if (auto* sn = std::get_if<SnCertified>(&v)) out["eta"] = sn->eta;
  if (auto* ns = std::get_if<NotSn>(&v)) {
    json path = json::array();
    for (auto id : ns->cycle_witness) path.push_back(to_string(ns->graph.nodes[id]));
    out["cycle_witness"] = std::move(path);
  }
  if (auto* ex = std::get_if<Exhausted>(&v)) out["explored"] = ex->explored;
  if (with_graph) out["graph"] = graph_json(verdict_graph(v));
  return out;
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace detail

inline std::string graph_dot(const ReductionGraph& g) {
  std::ostringstream os;
  os << "digraph reductions {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << detail::dot_escape(to_string(g.nodes[i])) << "\"";
    if (i == g.root) os << ", shape=box";
    os << "];\n";
  }
  for (const auto& e : g.edges)
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << rule_name(e.rule) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace lamlab

#endif  // LAMLAB_JSON_IO_HPP
