#ifndef LAMLAB_REDUCTION_HPP
#define LAMLAB_REDUCTION_HPP

// The four rewrite rules and the head decompositions built from them:
//   beta  : (\x.M N)      -> M[x:=N]
//   delta : (\y.\x.M N)   -> \x.(\y.M N)      x not free in N
//   gamma : (\x.M N P)    -> (\x.(M P) N)     x not free in P
//   assoc : (M (\x.N P))  -> (\x.(M N) P)     x not free in M
// Side conditions are discharged by renaming the bound x, so every
// structural match is a redex.

#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lamlab/term.hpp"

namespace lamlab {

enum class Rule : std::uint8_t { Beta, Delta, Gamma, Assoc };

inline constexpr Rule kAllRules[] = {Rule::Beta, Rule::Delta, Rule::Gamma, Rule::Assoc};

inline std::string_view rule_name(Rule r) noexcept {
  switch (r) {
    case Rule::Beta: return "beta";
    case Rule::Delta: return "delta";
    case Rule::Gamma: return "gamma";
    case Rule::Assoc: return "assoc";
  }
  return "?";
}

class RuleSet {
 public:
  constexpr RuleSet() = default;
  constexpr RuleSet(std::initializer_list<Rule> rs) {
    for (Rule r : rs) bits_ |= bit(r);
  }
  static constexpr RuleSet beta() { return {Rule::Beta}; }
  static constexpr RuleSet perm() { return {Rule::Delta, Rule::Gamma, Rule::Assoc}; }
  static constexpr RuleSet all() { return {Rule::Beta, Rule::Delta, Rule::Gamma, Rule::Assoc}; }

  constexpr bool contains(Rule r) const noexcept { return (bits_ & bit(r)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  friend constexpr bool operator==(RuleSet, RuleSet) = default;

  /// "beta", "perm" or "all" (also a single rule name).
  static RuleSet parse(std::string_view s) {
    if (s == "beta") return beta();
    if (s == "perm") return perm();
    if (s == "all") return all();
    if (s == "delta") return {Rule::Delta};
    if (s == "gamma") return {Rule::Gamma};
    if (s == "assoc") return {Rule::Assoc};
    throw std::invalid_argument("unknown rule set '" + std::string(s) + "'");
  }

  std::string to_string() const {
    if (*this == all()) return "all";
    if (*this == beta()) return "beta";
    if (*this == perm()) return "perm";
    std::string out;
    for (Rule r : kAllRules) {
      if (!contains(r)) continue;
      if (!out.empty()) out += '+';
      out += rule_name(r);
    }
    return out;
  }

 private:
  static constexpr std::uint8_t bit(Rule r) { return std::uint8_t(1u << unsigned(r)); }
  std::uint8_t bits_ = 0;
};

struct Redex {
  Rule rule;
  Path path;
  friend bool operator==(const Redex&, const Redex&) = default;
};

class StaleRedexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool matches(const Term& t, Rule r) noexcept {
  if (!t.is_app()) return false;
  switch (r) {
    case Rule::Beta: return t.fun().is_abs();
    case Rule::Delta: return t.fun().is_abs() && t.fun().body().is_abs();
    case Rule::Gamma: return t.fun().is_app() && t.fun().fun().is_abs();
    case Rule::Assoc: return t.arg().is_app() && t.arg().fun().is_abs();
  }
  return false;
}

namespace detail {
inline void find_redexes_impl(const Term& t, RuleSet rules, Path& path, std::vector<Redex>& out) {
  for (Rule r : kAllRules)
    if (rules.contains(r) && matches(t, r)) out.push_back({r, path});
  switch (t.kind()) {
    case Term::Kind::Var: return;
    case Term::Kind::Abs:
      path.push_back(Step::Body);
      find_redexes_impl(t.body(), rules, path, out);
      path.pop_back();
      return;
    case Term::Kind::App:
      path.push_back(Step::Fun);
      find_redexes_impl(t.fun(), rules, path, out);
      path.back() = Step::Arg;
      find_redexes_impl(t.arg(), rules, path, out);
      path.pop_back();
      return;
  }
}

/// Binder of `abs` renamed apart from `avoid` when it occurs there (or equals `also`).
inline Term rename_apart(const Term& abs, const std::set<std::string>& avoid,
                         const std::string* also = nullptr) {
  const std::string& x = abs.name();
  if (!avoid.count(x) && !(also && *also == x)) return abs;
  std::set<std::string> body_fv = free_vars(abs.body());
  std::string fresh = fresh_name(x, [&](const std::string& n) {
    return avoid.count(n) > 0 || body_fv.count(n) > 0 || (also && *also == n);
  });
  return rename_binder(abs, fresh);
}
}  // namespace detail

/// Contracts a redex sitting at the root of t.
inline Term contract_root(const Term& t, Rule r) {
  if (!matches(t, r))
    throw StaleRedexError(std::string("no ") + std::string(rule_name(r)) + " redex at this position");
  switch (r) {
    case Rule::Beta:
      return substitute(t.fun().body(), t.fun().name(), t.arg());
    case Rule::Delta: {
      // (\y.\x.M N) -> \x.(\y.M N); x must avoid N and differ from y.
      const Term& outer = t.fun();
      const std::string& y = outer.name();
      Term inner = detail::rename_apart(outer.body(), free_vars(t.arg()), &y);
      return Term::abs(inner.name(),
                       Term::app(Term::abs(y, inner.body()), t.arg()));
    }
    case Rule::Gamma: {
      // (\x.M N P) -> (\x.(M P) N)
      const Term& p = t.arg();
      Term lam = detail::rename_apart(t.fun().fun(), free_vars(p));
      return Term::app(Term::abs(lam.name(), Term::app(lam.body(), p)), t.fun().arg());
    }
    case Rule::Assoc: {
      // (M (\x.N P)) -> (\x.(M N) P)
      const Term& m = t.fun();
      Term lam = detail::rename_apart(t.arg().fun(), free_vars(m));
      return Term::app(Term::abs(lam.name(), Term::app(m, lam.body())), t.arg().arg());
    }
  }
  return t;
}

/// All redexes for the selected rules, leftmost-outermost (preorder; rule
/// order beta, delta, gamma, assoc at equal positions).
inline std::vector<Redex> find_redexes(const Term& t, RuleSet rules) {
  std::vector<Redex> out;
  Path path;
  detail::find_redexes_impl(t, rules, path, out);
  return out;
}

inline Term contract(const Term& t, const Redex& r) {
  const Term* at = &t;
  for (Step s : r.path) {
    bool ok = (s == Step::Body && at->is_abs()) || (s != Step::Body && at->is_app());
    if (!ok) throw StaleRedexError("redex path does not address a subterm");
    at = &subterm_at(*at, std::span<const Step>(&s, 1));
  }
  return replace_at(t, r.path, contract_root(*at, r.rule));
}

struct ReductionStep {
  Rule rule;
  Term result;
};

/// One-step reducts tagged with their rule, deduplicated up to alpha per rule.
inline std::vector<ReductionStep> one_step(const Term& t, RuleSet rules) {
  std::vector<ReductionStep> out;
  std::unordered_set<std::string> seen;
  for (const Redex& r : find_redexes(t, rules)) {
    Term u = contract(t, r);
    std::string key = std::string(rule_name(r.rule)) + ':' + canonical_key(u);
    if (seen.insert(std::move(key)).second) out.push_back({r.rule, std::move(u)});
  }
  return out;
}

/// The one-step relation, deduplicated up to alpha-equivalence.
inline std::vector<Term> one_step_reducts(const Term& t, RuleSet rules) {
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  for (const Redex& r : find_redexes(t, rules)) {
    Term u = contract(t, r);
    if (seen.insert(canonical_key(u)).second) out.push_back(std::move(u));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Head decompositions

struct HeadDecomposition {
  Term head;               // variable or abstraction
  std::vector<Term> args;  // nonempty
};

inline std::optional<HeadDecomposition> decompose(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  std::vector<Term> args;
  const Term* h = &t;
  while (h->is_app()) {
    args.push_back(h->arg());
    h = &h->fun();
  }
  return HeadDecomposition{*h, std::vector<Term>(args.rbegin(), args.rend())};
}

inline Term recompose(const HeadDecomposition& d) { return Term::apply(d.head, d.args); }

/// Arg[t], B[t], C[t], D[t] and A[t,i] for t = (H M1 ... Mn).
struct HeadParts {
  std::optional<Term> arg;    // beta-head reducible
  std::optional<Term> b;      // beta-head reducible
  std::optional<Term> c;      // gamma-head reducible
  std::optional<Term> d;      // delta-head reducible
  std::vector<std::pair<std::size_t, Term>> a;  // (i, A[t,i]) with 1-based i

  bool head_reducible() const { return b || c || d; }
};

inline HeadParts head_parts(const Term& t) {
  auto dec = decompose(t);
  if (!dec) throw std::invalid_argument("head_parts: term has no head decomposition");
  const Term& h = dec->head;
  const auto& m = dec->args;
  auto tail_from = [&](std::size_t k) { return std::span<const Term>(m).subspan(k); };

  HeadParts parts;
  if (h.is_abs()) {
    parts.arg = m[0];
    parts.b = Term::apply(contract_root(Term::app(h, m[0]), Rule::Beta), tail_from(1));
    if (m.size() >= 2)
      parts.c = Term::apply(contract_root(Term::apply(h, tail_from(0).first(2)), Rule::Gamma),
                            tail_from(2));
    if (h.body().is_abs())
      parts.d = Term::apply(contract_root(Term::app(h, m[0]), Rule::Delta), tail_from(1));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!matches(m[i], Rule::Beta)) continue;
    Term prefix = Term::apply(h, tail_from(0).first(i));
    Term node = Term::app(prefix, m[i]);
    parts.a.emplace_back(i + 1, Term::apply(contract_root(node, Rule::Assoc), tail_from(i + 1)));
  }
  return parts;
}

}  // namespace lamlab

#endif  // LAMLAB_REDUCTION_HPP
