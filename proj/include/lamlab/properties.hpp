#ifndef LAMLAB_PROPERTIES_HPP
#define LAMLAB_PROPERTIES_HPP

// Exhaustive property runs over enumerated corpora.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lamlab/derivation.hpp"
#include "lamlab/enumerate.hpp"
#include "lamlab/json_io.hpp"
#include "lamlab/normalization.hpp"
#include "lamlab/reduction.hpp"
#include "lamlab/sn_typing.hpp"
#include "lamlab/syntax.hpp"
#include "lamlab/term.hpp"
#include "lamlab/type_search.hpp"

namespace lamlab {

struct PropertyOptions {
  /// Size bound for the second term of pair properties (u, a). Unset means
  /// max_size - 2 (subst_commute, eta_monotone) or max_size - 1
  /// (substitution theorems).
  std::optional<std::size_t> aux_max_size;
  /// The substituted variable.
  std::string subst_var = "x";
  /// First budget for subject_reduction; failures are retried at 10x.
  std::size_t search_budget = 10000;
};

struct PropertyReport {
  std::string property;
  EnumSpec spec;
  std::optional<std::size_t> aux_max_size;
  std::size_t fuel = 0;
  std::size_t tested = 0;
  std::size_t skipped = 0;
  json counterexamples = json::array();
  double seconds = 0;
  json diagnostics = json::object();

  bool passed() const { return counterexamples.empty(); }
};

inline json report_json(const PropertyReport& r, bool with_timing = true) {
  json spec = {{"max_size", r.spec.max_size}, {"pool", r.spec.free_pool}, {"closed", r.spec.closed_only}};
  if (r.aux_max_size) spec["aux_max_size"] = *r.aux_max_size;
  spec["fuel"] = r.fuel;
  json out = {{"property", r.property}, {"spec", std::move(spec)}, {"tested", r.tested},
              {"skipped", r.skipped},   {"counterexamples", r.counterexamples}};
  if (with_timing) out["seconds"] = r.seconds;
  out["diagnostics"] = r.diagnostics;
  return out;
}

namespace detail {

/// Verdict summary cache keyed by alpha-class; graphs are not retained.
class SnCache {
 public:
  SnCache(RuleSet rules, std::size_t fuel) : rules_(rules), fuel_(fuel) {}

  struct Entry {
    enum Kind { Sn, NotSn, Exhausted } kind;
    std::size_t eta = 0;
  };

  Entry get(const Term& t) {
    auto key = canonical_key(t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SnVerdict v = decide_sn(t, rules_, fuel_);
    Entry e{Entry::Exhausted};
    if (auto* s = std::get_if<SnCertified>(&v)) e = {Entry::Sn, s->eta};
    else if (is_not_sn(v)) e = {Entry::NotSn};
    return memo_.emplace(std::move(key), e).first->second;
  }

  /// Full verdict with graph, for evidence.
  json evidence(const Term& t) const {
    json out = {{"term", to_string(t)}, {"rules", rules_.to_string()}};
    out.update(verdict_json(decide_sn(t, rules_, fuel_), true));
    return out;
  }

 private:
  RuleSet rules_;
  std::size_t fuel_;
  std::unordered_map<std::string, Entry> memo_;
};

using Cache = SnCache::Entry;

struct Run {
  PropertyReport& rep;
  std::vector<Term> corpus;
  std::size_t fuel;
  const PropertyOptions& opt;

  std::size_t aux(std::size_t dflt_drop) const {
    if (rep.aux_max_size) return *rep.aux_max_size;
    return rep.spec.max_size > dflt_drop ? rep.spec.max_size - dflt_drop : 1;
  }
  std::vector<Term> aux_corpus(std::size_t dflt_drop) {
    rep.aux_max_size = aux(dflt_drop);
    EnumSpec s = rep.spec;
    s.max_size = *rep.aux_max_size;
    return enumerate(s);
  }
  void count(const char* key, std::size_t n = 1) {
    auto& d = rep.diagnostics;
    d[key] = d.value(key, std::size_t{0}) + n;
  }
};

inline json typing_json(const Typing& r) {
  return {{"context", context_json(r.context)}, {"type", to_string(r.type)},
          {"derivation", derivation_json(r.derivation)}};
}

// beta-SN implies SN under all four rules.
inline void preservation(Run& run) {
  SnCache beta(RuleSet::beta(), run.fuel), all(RuleSet::all(), run.fuel);
  for (const Term& t : run.corpus) {
    auto b = beta.get(t);
    if (b.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    if (b.kind == Cache::NotSn) { run.count("not_beta_sn"); continue; }
    auto a = all.get(t);
    if (a.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    ++run.rep.tested;
    if (a.kind == Cache::NotSn)
      run.rep.counterexamples.push_back(
          {{"term", to_string(t)}, {"beta", beta.evidence(t)}, {"all", all.evidence(t)}});
  }
}

// infer succeeds exactly on the beta-SN terms, with valid,
// normal, restricted derivations.
inline void typable_iff_beta_sn(Run& run) {
  SnCache beta(RuleSet::beta(), run.fuel);
  std::size_t max_deriv = 0;
  for (const Term& t : run.corpus) {
    auto b = beta.get(t);
    if (b.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    json problem;
    try {
      TypedResult r = infer(t, run.fuel);
      if (b.kind == Cache::NotSn) {
        problem = {{"issue", "typed a term that is not beta-SN"}, {"typing", typing_json(r)}};
      } else {
        const Derivation& d = r.derivation;
        max_deriv = std::max(max_deriv, derivation_size(d));
        std::string issue;
        if (!(d.subject() == t) || !contexts_equal(d.context(), r.context) || !(d.type() == r.type))
          issue = "derivation conclusion differs from the reported typing";
        else if (auto e = derivation_error(d))
          issue = "invalid derivation: " + *e;
        else if (!is_normal(d))
          issue = "derivation is not normal";
        else if (!all_types_restricted(d))
          issue = "unrestricted type in derivation";
        if (!issue.empty()) problem = {{"issue", issue}, {"typing", typing_json(r)}};
        else run.count("typed");
      }
    } catch (const InferenceError& e) {
      if (e.reason() == InferenceError::Reason::FuelExhausted) { ++run.rep.skipped; continue; }
      if (b.kind == Cache::Sn) problem = {{"issue", std::string("beta-SN term rejected: ") + e.what()}};
      else run.count("rejected_not_beta_sn");
    } catch (const std::logic_error& e) {
      problem = {{"issue", std::string("inference failure: ") + e.what()}};
    }
    ++run.rep.tested;
    if (!problem.is_null()) {
      problem["term"] = to_string(t);
      problem["beta"] = beta.evidence(t);
      run.rep.counterexamples.push_back(std::move(problem));
    }
  }
  run.rep.diagnostics["max_derivation_size"] = max_deriv;
}

// typable implies SN under all rules.
inline void typable_implies_sn(Run& run) {
  SnCache all(RuleSet::all(), run.fuel);
  for (const Term& t : run.corpus) {
    std::optional<TypedResult> r;
    try {
      r = infer(t, run.fuel);
    } catch (const InferenceError& e) {
      if (e.reason() == InferenceError::Reason::FuelExhausted) ++run.rep.skipped;
      else run.count("untypable");
      continue;
    }
    if (!check_derivation(r->derivation)) {
      run.rep.counterexamples.push_back({{"term", to_string(t)}, {"issue", "invalid derivation"},
                                         {"typing", typing_json(*r)}});
      ++run.rep.tested;
      continue;
    }
    auto a = all.get(t);
    if (a.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    ++run.rep.tested;
    if (a.kind == Cache::NotSn)
      run.rep.counterexamples.push_back(
          {{"term", to_string(t)}, {"typing", typing_json(*r)}, {"all", all.evidence(t)}});
  }
}

// Subject reduction under every rule, checked by bounded derivation search.
inline void subject_reduction(Run& run) {
  json persistent = json::array();
  for (const Term& t : run.corpus) {
    std::optional<TypedResult> r;
    try {
      r = infer(t, run.fuel);
    } catch (const InferenceError& e) {
      if (e.reason() == InferenceError::Reason::FuelExhausted) ++run.rep.skipped;
      continue;
    }
    for (const Rule rule : kAllRules) {
      for (const Term& t2 : one_step_reducts(t, RuleSet{rule})) {
        auto d = find_derivation(r->context, t2, r->type, run.opt.search_budget);
        if (!d) {
          run.count("retried");
          d = find_derivation(r->context, t2, r->type, run.opt.search_budget * 10);
        }
        if (!d) {
          ++run.rep.skipped;
          persistent.push_back({{"term", to_string(t)}, {"rule", rule_name(rule)},
                                {"reduct", to_string(t2)}, {"context", context_json(r->context)},
                                {"type", to_string(r->type)}});
          continue;
        }
        ++run.rep.tested;
        std::string issue;
        if (!(d->subject() == t2) || !contexts_equal(d->context(), r->context) || !(d->type() == r->type))
          issue = "derivation concludes a different judgement";
        else if (auto e = derivation_error(*d))
          issue = "invalid derivation: " + *e;
        else if (!is_normal(*d))
          issue = "derivation is not normal";
        if (!issue.empty())
          run.rep.counterexamples.push_back({{"term", to_string(t)}, {"rule", rule_name(rule)},
                                             {"reduct", to_string(t2)}, {"issue", issue},
                                             {"typing", typing_json(*r)},
                                             {"derivation", derivation_json(*d)}});
      }
    }
  }
  run.rep.diagnostics["budget_failures"] = std::move(persistent);
}

// t -> t' implies t[x:=u] -> t'[x:=u] by the same rule, up to alpha.
inline void subst_commute(Run& run) {
  auto us = run.aux_corpus(2);
  const std::string& x = run.opt.subst_var;
  for (const Term& t : run.corpus) {
    for (const Rule rule : kAllRules) {
      RuleSet rs{rule};
      for (const Term& t2 : one_step_reducts(t, rs)) {
        for (const Term& u : us) {
          ++run.rep.tested;
          Term s = substitute(t, x, u);
          Term want = substitute(t2, x, u);
          auto got = one_step_reducts(s, rs);
          bool ok = std::any_of(got.begin(), got.end(), [&](const Term& w) { return alpha_eq(w, want); });
          if (ok) continue;
          json reducts = json::array();
          for (const auto& w : got) reducts.push_back(to_string(w));
          run.rep.counterexamples.push_back({{"term", to_string(t)}, {"rule", rule_name(rule)},
                                             {"reduct", to_string(t2)}, {"u", to_string(u)},
                                             {"substituted", to_string(s)}, {"expected", to_string(want)},
                                             {"actual_reducts", std::move(reducts)}});
        }
      }
    }
  }
}

// t[x:=u] SN implies t SN and eta(t) <= eta(t[x:=u]).
inline void eta_monotone(Run& run) {
  auto us = run.aux_corpus(2);
  const std::string& x = run.opt.subst_var;
  SnCache all(RuleSet::all(), run.fuel);
  for (const Term& t : run.corpus) {
    for (const Term& u : us) {
      Term s = substitute(t, x, u);
      auto vs = all.get(s);
      if (vs.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
      if (vs.kind == Cache::NotSn) { run.count("substituted_not_sn"); continue; }
      auto vt = all.get(t);
      if (vt.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
      ++run.rep.tested;
      if (vt.kind == Cache::Sn && vt.eta <= vs.eta) continue;
      run.rep.counterexamples.push_back({{"term", to_string(t)}, {"u", to_string(u)},
                                         {"substituted", all.evidence(s)}, {"original", all.evidence(t)}});
    }
  }
}

// Head, arguments and designated head reducts SN imply t SN.
inline void cs_sn(Run& run) {
  SnCache all(RuleSet::all(), run.fuel);
  for (const Term& t : run.corpus) {
    auto dec = decompose(t);
    if (!dec || dec->args.empty()) continue;
    HeadParts hp = head_parts(t);
    std::vector<std::pair<std::string, Term>> hyps{{"H", dec->head}};
    for (std::size_t i = 0; i < dec->args.size(); ++i)
      hyps.emplace_back("M" + std::to_string(i + 1), dec->args[i]);
    if (hp.d) hyps.emplace_back("D", *hp.d);
    if (hp.c) hyps.emplace_back("C", *hp.c);
    if (hp.arg) hyps.emplace_back("Arg", *hp.arg);
    if (hp.b) hyps.emplace_back("B", *hp.b);
    for (const auto& [i, a] : hp.a) hyps.emplace_back("A" + std::to_string(i), a);

    bool skip = false, vacuous = false;
    for (const auto& [name, h] : hyps) {
      auto v = all.get(h);
      skip |= v.kind == Cache::Exhausted;
      vacuous |= v.kind == Cache::NotSn;
    }
    if (vacuous) { run.count("hypothesis_not_sn"); continue; }
    if (skip) { ++run.rep.skipped; continue; }
    auto v = all.get(t);
    if (v.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    ++run.rep.tested;
    if (v.kind == Cache::Sn) continue;
    json hs = json::object();
    for (const auto& [name, h] : hyps) hs[name] = to_string(h);
    run.rep.counterexamples.push_back({{"term", to_string(t)}, {"hypotheses", std::move(hs)},
                                       {"all", all.evidence(t)}});
  }
}

inline void collect_names(const Term& t, std::set<std::string>& out) {
  if (!t.is_app()) out.insert(t.name());
  if (t.is_abs()) collect_names(t.body(), out);
  if (t.is_app()) {
    collect_names(t.fun(), out);
    collect_names(t.arg(), out);
  }
}

// Typable L[t] SN implies L[(\z.t z)] SN for fresh z, over every left split.
inline void prepa2(Run& run) {
  SnCache all(RuleSet::all(), run.fuel);
  for (const Term& s : run.corpus) {
    std::optional<TypedResult> r;
    try {
      r = infer(s, run.fuel);
    } catch (const InferenceError& e) {
      if (e.reason() == InferenceError::Reason::FuelExhausted) ++run.rep.skipped;
      else run.count("untypable");
      continue;
    }
    auto vs = all.get(s);
    if (vs.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    if (vs.kind == Cache::NotSn) { run.count("not_sn"); continue; }
    std::set<std::string> names;
    collect_names(s, names);
    std::string z = fresh_name(std::string("z"), [&](const std::string& n) { return names.count(n) > 0; });
    for (const auto& [ctx, t] : left_splits(s)) {
      Term w = plug(ctx, Term::app(Term::abs(z, t), Term::var(z)));
      auto vw = all.get(w);
      if (vw.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
      ++run.rep.tested;
      if (vw.kind == Cache::Sn) continue;
      run.rep.counterexamples.push_back({{"term", to_string(s)}, {"hole", to_string(t)},
                                         {"expanded", all.evidence(w)}, {"typing", typing_json(*r)}});
    }
  }
}

// t, a SN and a typable imply t[x:=a] SN. With `typed`, t must also be
// typable with x receiving the type inferred for a.
inline void substitution_theorem(Run& run, bool typed) {
  auto as = run.aux_corpus(1);
  const std::string& x = run.opt.subst_var;
  SnCache all(RuleSet::all(), run.fuel);
  std::optional<Measure> max_measure;
  std::size_t measured = 0;

  std::vector<std::pair<Term, Type>> images;
  for (const Term& a : as) {
    auto va = all.get(a);
    if (va.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    if (va.kind == Cache::NotSn) continue;
    try {
      images.emplace_back(a, infer(a, run.fuel).type);
    } catch (const InferenceError& e) {
      if (e.reason() == InferenceError::Reason::FuelExhausted) ++run.rep.skipped;
    }
  }
  run.rep.diagnostics["typable_images"] = images.size();

  for (const Term& t : run.corpus) {
    auto vt = all.get(t);
    if (vt.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
    if (vt.kind == Cache::NotSn) continue;
    for (const auto& [a, ty] : images) {
      std::optional<Typing> tt;
      if (typed) {
        TypeSearch search(run.opt.search_budget);
        tt = search.type_with(Context{{x, ty}}, t);
        if (!tt) {
          if (search.exhausted()) ++run.rep.skipped;
          else run.count("untyped_with_image_type");
          continue;
        }
      }
      Term s = substitute(t, x, a);
      auto vs = all.get(s);
      if (vs.kind == Cache::Exhausted) { ++run.rep.skipped; continue; }
      ++run.rep.tested;
      if (vs.kind == Cache::Sn) {
        Measure m = induction_measure(t, SubstitutionMap{{x, a}}, ty, RuleSet::beta(), run.fuel);
        ++measured;
        if (!max_measure || *max_measure < m) max_measure = m;
        continue;
      }
      json cx = {{"t", to_string(t)}, {"a", to_string(a)}, {"type_of_a", to_string(ty)},
                 {"substituted", all.evidence(s)}};
      if (tt) cx["typing_of_t"] = typing_json(*tt);
      run.rep.counterexamples.push_back(std::move(cx));
    }
  }
  run.rep.diagnostics["measured"] = measured;
  if (max_measure)
    run.rep.diagnostics["max_measure"] = {max_measure->type_size, max_measure->eta, max_measure->size,
                                          max_measure->eta_sigma, max_measure->size_sigma};
}

}  // namespace detail

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{
      "preservation", "typable_iff_beta_sn", "subject_reduction", "subst_commute", "eta_monotone",
      "cs_sn",        "prepa2",              "substitution_theorem", "substitution_theorem_typed",
      "typable_implies_sn"};
  return names;
}

/// Runs a named property exhaustively over enumerate(spec). Throws
/// std::invalid_argument for an unknown name.
inline PropertyReport run_property(const std::string& name, const EnumSpec& spec, std::size_t fuel,
                                   const PropertyOptions& opt = {}) {
  static const std::map<std::string, std::function<void(detail::Run&)>> table{
      {"preservation", detail::preservation},
      {"typable_iff_beta_sn", detail::typable_iff_beta_sn},
      {"subject_reduction", detail::subject_reduction},
      {"subst_commute", detail::subst_commute},
      {"eta_monotone", detail::eta_monotone},
      {"cs_sn", detail::cs_sn},
      {"prepa2", detail::prepa2},
      {"substitution_theorem", [](detail::Run& r) { detail::substitution_theorem(r, false); }},
      {"substitution_theorem_typed", [](detail::Run& r) { detail::substitution_theorem(r, true); }},
      {"typable_implies_sn", detail::typable_implies_sn},
  };
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown property '" + name + "'");
  if (fuel < 1) throw std::invalid_argument("fuel must be at least 1");

  PropertyReport rep;
  rep.property = name;
  rep.spec = spec;
  rep.aux_max_size = opt.aux_max_size;
  rep.fuel = fuel;
  auto start = std::chrono::steady_clock::now();
  detail::Run run{rep, enumerate(spec), fuel, opt};
  it->second(run);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace lamlab

#endif  // LAMLAB_PROPERTIES_HPP
