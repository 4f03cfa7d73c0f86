// lamlab: command-line front end.
//
// Exit codes: 0 success, 1 counterexample (or certified non-SN where a
// normal form was required), 2 input error, 3 budget exhausted.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lamlab/lamlab.hpp"

namespace {

using namespace lamlab;

enum Exit { kOk = 0, kCounterexample = 1, kInputError = 2, kBudget = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Term read_term(const std::string& src) {
  std::string text = src;
  if (text == "-") text.assign(std::istreambuf_iterator<char>(std::cin), {});
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("cannot parse term: ") + e.what());
  }
}

RuleSet read_rules(const std::string& s) {
  try {
    return RuleSet::parse(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> split_pool(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_derivation(std::ostream& os, const Derivation& d, int depth) {
  for (const auto& p : d.premises) print_derivation(os, p, depth + 1);
  os << std::string(2 * depth, ' ') << to_string(d.context()) << " |- " << to_string(d.subject()) << " : "
     << to_string(d.type()) << "   [" << typing_rule_name(d.rule) << "]\n";
}

struct Options {
  std::string term = "-";
  std::string format = "text";
  std::string rules = "all";
  std::size_t fuel = kDefaultFuel;
  std::size_t steps = 100;
  std::string property;
  std::size_t max_size = 5;
  std::string pool;
  bool closed = false;
  bool count = false;
  std::string report;
  std::optional<std::size_t> aux_size;
  std::size_t budget = 10000;
};

int cmd_print(const Options& o) {
  Term t = read_term(o.term);
  if (o.format == "json")
    std::cout << json{{"term", to_string(t)}, {"size", t.size()}, {"ast", term_ast_json(t)}}.dump(2) << "\n";
  else
    std::cout << to_string(t) << "\n";
  return kOk;
}

int cmd_reduce(const Options& o) {
  Term t = read_term(o.term);
  RuleSet rules = read_rules(o.rules);
  std::cout << "0\t\t" << to_string(t) << "\n";
  for (std::size_t i = 1; i <= o.steps; ++i) {
    auto rs = find_redexes(t, rules);
    if (rs.empty()) {
      std::cout << "normal form after " << i - 1 << " step(s)\n";
      return kOk;
    }
    t = contract(t, rs.front());
    std::cout << i << '\t' << rule_name(rs.front().rule) << '\t' << to_string(t) << "\n";
  }
  return find_redexes(t, rules).empty() ? kOk : kBudget;
}

int cmd_graph(const Options& o) {
  Term t = read_term(o.term);
  ReductionGraph g = explore(t, read_rules(o.rules), o.fuel);
  if (o.format == "json")
    std::cout << graph_json(g).dump(2) << "\n";
  else
    std::cout << graph_dot(g);
  return g.complete ? kOk : kBudget;
}

int cmd_sn(const Options& o) {
  Term t = read_term(o.term);
  SnVerdict v = decide_sn(t, read_rules(o.rules), o.fuel);
  if (o.format == "json") {
    json out = {{"term", to_string(t)}, {"rules", o.rules}};
    out.update(verdict_json(v));
    std::cout << out.dump(2) << "\n";
  } else if (auto* sn = std::get_if<SnCertified>(&v)) {
    std::cout << "SN eta=" << sn->eta << " nodes=" << sn->graph.nodes.size() << "\n";
  } else if (auto* ns = std::get_if<NotSn>(&v)) {
    std::cout << "NotSN\n";
    for (auto id : ns->cycle_witness) std::cout << "  " << to_string(ns->graph.nodes[id]) << "\n";
  } else {
    std::cout << "Exhausted after " << std::get<Exhausted>(v).explored << " nodes\n";
  }
  return is_exhausted(v) ? kBudget : kOk;
}

int cmd_eta(const Options& o) {
  Term t = read_term(o.term);
  try {
    std::cout << eta(t, read_rules(o.rules), o.fuel) << "\n";
    return kOk;
  } catch (const NormalizationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exhausted() ? kBudget : kCounterexample;
  }
}

int cmd_type_infer(const Options& o) {
  Term t = read_term(o.term);
  std::optional<TypedResult> res;
  try {
    res = infer(t, o.fuel);
  } catch (const InferenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.reason() == InferenceError::Reason::FuelExhausted ? kBudget : kCounterexample;
  }
  const TypedResult& r = *res;
  if (o.format == "json") {
    json out = {{"term", to_string(t)}, {"context", context_json(r.context)}, {"type", to_string(r.type)},
                {"derivation", derivation_json(r.derivation)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(r.context) << " |- " << to_string(t) << " : " << to_string(r.type) << "\n\n";
    print_derivation(std::cout, r.derivation, 0);
  }
  return kOk;
}

int cmd_check(const Options& o) {
  EnumSpec spec{o.max_size, split_pool(o.pool), o.closed};
  PropertyOptions popt;
  popt.aux_max_size = o.aux_size;
  popt.search_budget = o.budget;
  std::optional<PropertyReport> res;
  try {
    res = run_property(o.property, spec, o.fuel, popt);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const PropertyReport& rep = *res;
  std::string body = report_json(rep).dump(2) + "\n";
  if (o.report.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.report, std::ios::binary);
    if (!out) throw InputError("cannot write report to '" + o.report + "'");
    out << body;
    std::cout << rep.property << ": tested=" << rep.tested << " skipped=" << rep.skipped
              << " counterexamples=" << rep.counterexamples.size() << "\n";
  }
  if (!rep.passed()) return kCounterexample;
  return rep.skipped > 0 ? kBudget : kOk;
}

int cmd_enumerate(const Options& o) {
  std::vector<Term> ts;
  try {
    ts = enumerate({o.max_size, split_pool(o.pool), o.closed});
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (o.count) {
    std::cout << ts.size() << "\n";
    return kOk;
  }
  for (const auto& t : ts) std::cout << to_string(t) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-calculus laboratory: rewriting, strong normalization, intersection types"};
  app.require_subcommand(1);
  Options o;

  auto add_term = [&](CLI::App* c) { c->add_option("term", o.term, "term, or - for stdin"); };
  auto add_rules = [&](CLI::App* c) {
    c->add_option("--rules", o.rules, "beta, perm, all, or a single rule")->capture_default_str();
  };
  auto add_fuel = [&](CLI::App* c) {
    c->add_option("--fuel", o.fuel, "node budget")->capture_default_str()->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds;

  for (const char* name : {"parse", "print"}) {
    auto* c = app.add_subcommand(name, "parse a term and print it");
    add_term(c);
    c->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    cmds.emplace_back(c, cmd_print);
  }
  {
    auto* c = app.add_subcommand("reduce", "print a reduction trace (first redex in preorder)");
    add_term(c);
    add_rules(c);
    c->add_option("--steps", o.steps)->capture_default_str();
    cmds.emplace_back(c, cmd_reduce);
  }
  {
    auto* c = app.add_subcommand("graph", "export the reduction graph");
    add_term(c);
    add_rules(c);
    add_fuel(c);
    c->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    cmds.emplace_back(c, cmd_graph);
  }
  {
    auto* c = app.add_subcommand("sn", "decide strong normalization");
    add_term(c);
    add_rules(c);
    add_fuel(c);
    c->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    cmds.emplace_back(c, cmd_sn);
  }
  {
    auto* c = app.add_subcommand("eta", "length of the longest reduction");
    add_term(c);
    add_rules(c);
    add_fuel(c);
    cmds.emplace_back(c, cmd_eta);
  }
  {
    auto* c = app.add_subcommand("type-infer", "type a beta-SN term");
    add_term(c);
    add_fuel(c);
    c->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    cmds.emplace_back(c, cmd_type_infer);
  }
  {
    auto* c = app.add_subcommand("check", "run a property over an enumerated corpus");
    c->add_option("property", o.property)->required()->check(CLI::IsMember(property_names()));
    c->add_option("--max-size", o.max_size)->capture_default_str()->check(CLI::PositiveNumber);
    add_fuel(c);
    c->add_option("--pool", o.pool, "free variables, comma separated");
    c->add_flag("--closed", o.closed);
    c->add_option("--aux-size", o.aux_size, "size bound of the substituted term");
    c->add_option("--budget", o.budget, "derivation search budget")->capture_default_str();
    c->add_option("--report", o.report, "write the JSON report here");
    cmds.emplace_back(c, cmd_check);
  }
  {
    auto* c = app.add_subcommand("enumerate", "list terms up to a size");
    c->add_option("--max-size", o.max_size)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--pool", o.pool, "free variables, comma separated");
    c->add_flag("--closed", o.closed);
    c->add_flag("--count", o.count, "print only the number of terms");
    cmds.emplace_back(c, cmd_enumerate);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  for (auto& [c, fn] : cmds) {
    if (!c->parsed()) continue;
    try {
      return fn(o);
    } catch (const InputError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    } catch (const StaleRedexError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return kInputError;
}
