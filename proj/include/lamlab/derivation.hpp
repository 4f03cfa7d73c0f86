#ifndef LAMLAB_DERIVATION_HPP
#define LAMLAB_DERIVATION_HPP

// Typing derivations for the restricted intersection system:
//
//   Ax      G, x:A |- x : A
//   ArrowE  G |- M : A -> B    G |- N : A        =>  G |- (M N) : B
//   ArrowI  G, x:A |- M : B                      =>  G |- \x.M : A -> B
//   MeetE   G |- M : A /\ B                      =>  G |- M : A   (left) / B (right)
//   MeetI   G |- M : A    G |- M : B             =>  G |- M : A /\ B
//
// A context extended with x:A overrides an earlier declaration of x.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamlab/syntax.hpp"
#include "lamlab/term.hpp"
#include "lamlab/types.hpp"

namespace lamlab {

enum class TypingRule : unsigned char { Ax, ArrowE, ArrowI, MeetELeft, MeetERight, MeetI };

inline std::string_view typing_rule_name(TypingRule r) noexcept {
  switch (r) {
    case TypingRule::Ax: return "Ax";
    case TypingRule::ArrowE: return "ArrowE";
    case TypingRule::ArrowI: return "ArrowI";
    case TypingRule::MeetELeft: return "MeetE_left";
    case TypingRule::MeetERight: return "MeetE_right";
    case TypingRule::MeetI: return "MeetI";
  }
  return "?";
}

struct Judgement {
  Context context;
  Term subject;
  Type type;
};

struct Derivation {
  TypingRule rule;
  Judgement conclusion;
  std::vector<Derivation> premises;

  const Context& context() const noexcept { return conclusion.context; }
  const Term& subject() const noexcept { return conclusion.subject; }
  const Type& type() const noexcept { return conclusion.type; }
};

/// A typing of some term together with its witness.
struct Typing {
  Context context;
  Type type;
  Derivation derivation;
};

inline std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

inline Context extend(Context ctx, const std::string& x, const Type& a) {
  ctx.insert_or_assign(x, a);
  return ctx;
}

// ---------------------------------------------------------------------------
// Construction

inline Derivation axiom(const Context& ctx, const std::string& x) {
  return {TypingRule::Ax, {ctx, Term::var(x), ctx.at(x)}, {}};
}

inline Derivation arrow_elim(Derivation fun, Derivation arg) {
  Judgement j{fun.context(), Term::app(fun.subject(), arg.subject()), fun.type().cod()};
  std::vector<Derivation> ps;
  ps.push_back(std::move(fun));
  ps.push_back(std::move(arg));
  return {TypingRule::ArrowE, std::move(j), std::move(ps)};
}

/// `body` must be a derivation in ctx extended with binder:dom.
inline Derivation arrow_intro(const Context& ctx, const std::string& binder, const Type& dom,
                              Derivation body) {
  Judgement j{ctx, Term::abs(binder, body.subject()), Type::arrow(dom, body.type())};
  std::vector<Derivation> ps;
  ps.push_back(std::move(body));
  return {TypingRule::ArrowI, std::move(j), std::move(ps)};
}

/// Right-nested MeetI over derivations of simple types for one subject.
inline Derivation meet_intro(std::vector<Derivation> parts) {
  if (parts.empty()) throw std::invalid_argument("meet_intro: no parts");
  Derivation acc = std::move(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    Judgement j{parts[i].context(), parts[i].subject(), Type::meet({parts[i].type(), acc.type()})};
    std::vector<Derivation> ps;
    ps.push_back(std::move(parts[i]));
    ps.push_back(std::move(acc));
    acc = Derivation{TypingRule::MeetI, std::move(j), std::move(ps)};
  }
  return acc;
}

/// Derives ctx |- x : a from the declaration of x by projections (and
/// re-introduction when `a` is itself an intersection of declared conjuncts).
inline std::optional<Derivation> var_derive(const Context& ctx, const std::string& x, const Type& a) {
  auto it = ctx.find(x);
  if (it == ctx.end()) return std::nullopt;
  const Type& declared = it->second;
  if (declared == a) return axiom(ctx, x);
  if (!a.is_simple()) {
    std::vector<Derivation> parts;
    for (const Type& c : a.components()) {
      auto d = var_derive(ctx, x, c);
      if (!d) return std::nullopt;
      parts.push_back(std::move(*d));
    }
    return meet_intro(std::move(parts));
  }
  auto comps = declared.components();
  std::size_t idx = comps.size();
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i] == a) { idx = i; break; }
  if (idx == comps.size()) return std::nullopt;

  Term subject = Term::var(x);
  Derivation d = axiom(ctx, x);
  for (std::size_t i = 0; i < idx; ++i) {
    std::vector<Type> rest(comps.begin() + std::ptrdiff_t(i) + 1, comps.end());
    Judgement j{ctx, subject, Type::meet(rest)};
    std::vector<Derivation> ps;
    ps.push_back(std::move(d));
    d = Derivation{TypingRule::MeetERight, std::move(j), std::move(ps)};
  }
  if (idx + 1 < comps.size()) {
    std::vector<Derivation> ps;
    ps.push_back(std::move(d));
    d = Derivation{TypingRule::MeetELeft, {ctx, subject, a}, std::move(ps)};
  }
  return d;
}

/// Re-derives the judgement of `d` for `subject` in `ctx`, keeping the shape
/// of `d` above variables and re-deriving every variable occurrence from
/// `ctx` at the type `d` assigned it. Fails on a shape mismatch or when a
/// variable type is unavailable in the new context.
inline std::optional<Derivation> rebase(const Derivation& d, const Context& ctx, const Term& subject) {
  if (subject.is_var()) return var_derive(ctx, subject.name(), d.type());
  switch (d.rule) {
    case TypingRule::Ax:
      return std::nullopt;
    case TypingRule::MeetI: {
      auto l = rebase(d.premises[0], ctx, subject);
      auto r = l ? rebase(d.premises[1], ctx, subject) : std::nullopt;
      if (!r) return std::nullopt;
      std::vector<Derivation> ps;
      ps.push_back(std::move(*l));
      ps.push_back(std::move(*r));
      return Derivation{TypingRule::MeetI, {ctx, subject, d.type()}, std::move(ps)};
    }
    case TypingRule::MeetELeft:
    case TypingRule::MeetERight: {
      auto p = rebase(d.premises[0], ctx, subject);
      if (!p) return std::nullopt;
      std::vector<Derivation> ps;
      ps.push_back(std::move(*p));
      return Derivation{d.rule, {ctx, subject, d.type()}, std::move(ps)};
    }
    case TypingRule::ArrowI: {
      if (!subject.is_abs()) return std::nullopt;
      const Type& dom = d.type().dom();
      auto body = rebase(d.premises[0], extend(ctx, subject.name(), dom), subject.body());
      if (!body) return std::nullopt;
      return arrow_intro(ctx, subject.name(), dom, std::move(*body));
    }
    case TypingRule::ArrowE: {
      if (!subject.is_app()) return std::nullopt;
      auto f = rebase(d.premises[0], ctx, subject.fun());
      auto a = f ? rebase(d.premises[1], ctx, subject.arg()) : std::nullopt;
      if (!a) return std::nullopt;
      return arrow_elim(std::move(*f), std::move(*a));
    }
  }
  return std::nullopt;
}

/// Derivations of each simple conjunct of d's type, for the same judgement
/// context and subject.
inline std::optional<std::vector<Derivation>> split_components(const Derivation& d) {
  if (d.type().is_simple()) return std::vector<Derivation>{d};
  if (d.rule == TypingRule::MeetI) {
    auto rest = split_components(d.premises[1]);
    if (!rest) return std::nullopt;
    rest->insert(rest->begin(), d.premises[0]);
    return rest;
  }
  if (!d.subject().is_var()) return std::nullopt;
  std::vector<Derivation> out;
  for (const Type& c : d.type().components()) {
    auto v = var_derive(d.context(), d.subject().name(), c);
    if (!v) return std::nullopt;
    out.push_back(std::move(*v));
  }
  return out;
}

/// Topmost derivation nodes sitting at any of `positions` (paths relative to
/// d's subject). One entry per visit, so intersections duplicate positions.
inline void collect_at_positions(const Derivation& d, const std::set<Path>& positions, Path& cur,
                                 std::vector<const Derivation*>& out) {
  if (positions.count(cur)) {
    out.push_back(&d);
    return;
  }
  switch (d.rule) {
    case TypingRule::Ax: return;
    case TypingRule::ArrowE:
      cur.push_back(Step::Fun);
      collect_at_positions(d.premises[0], positions, cur, out);
      cur.back() = Step::Arg;
      collect_at_positions(d.premises[1], positions, cur, out);
      cur.pop_back();
      return;
    case TypingRule::ArrowI:
      cur.push_back(Step::Body);
      collect_at_positions(d.premises[0], positions, cur, out);
      cur.pop_back();
      return;
    default:
      for (const auto& p : d.premises) collect_at_positions(p, positions, cur, out);
      return;
  }
}

/// Builds ctx |- (\x.M a1 ... an) : A from a derivation `reduct` of
/// (M[x:=a1] a2 ... an) : A. `positions` are the paths inside M[x:=a1] where
/// copies of a1 landed; x receives the intersection of the types those copies
/// were given. When there are no copies, `vacuous_arg` must type a1 in ctx.
inline std::optional<Derivation> expand_redex(const Context& ctx, const Term& lam,
                                              std::span<const Term> args, const Derivation& reduct,
                                              const std::vector<Path>& positions,
                                              const std::optional<Derivation>& vacuous_arg) {
  if (!lam.is_abs() || args.empty()) return std::nullopt;
  const std::string& x = lam.name();

  // Peel the spine (m a2 ... an) : A down to m.
  std::vector<const Derivation*> rest;
  const Derivation* head = &reduct;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (head->rule != TypingRule::ArrowE) return std::nullopt;
    rest.push_back(&head->premises[1]);
    head = &head->premises[0];
  }

  std::vector<Derivation> arg_parts;
  if (positions.empty()) {
    if (!vacuous_arg) return std::nullopt;
    auto parts = split_components(*vacuous_arg);
    if (!parts) return std::nullopt;
    arg_parts = std::move(*parts);
  } else {
    std::set<Path> where(positions.begin(), positions.end());
    std::vector<const Derivation*> copies;
    Path cur;
    collect_at_positions(*head, where, cur, copies);
    if (copies.empty()) return std::nullopt;
    for (const Derivation* c : copies) {
      auto moved = rebase(*c, ctx, args[0]);
      auto parts = moved ? split_components(*moved) : std::nullopt;
      if (!parts) return std::nullopt;
      for (auto& p : *parts) arg_parts.push_back(std::move(p));
    }
  }
  std::vector<Type> conj;
  for (const auto& p : arg_parts) conj.push_back(p.type());
  Type dom = Type::meet(conj);

  auto body = rebase(*head, extend(ctx, x, dom), lam.body());
  if (!body) return std::nullopt;
  Derivation acc = arrow_elim(arrow_intro(ctx, x, dom, std::move(*body)), meet_intro(std::move(arg_parts)));
  for (std::size_t i = 1; i < args.size(); ++i) {
    auto a = rebase(*rest[rest.size() - i], ctx, args[i]);
    if (!a) return std::nullopt;
    acc = arrow_elim(std::move(acc), std::move(*a));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Checking

/// First rule violation found in d (premises before conclusions), if any.
inline std::optional<std::string> derivation_error(const Derivation& d,
                                                   MeetEquality mode = MeetEquality::Ordered) {
  static constexpr std::size_t kArity[] = {0, 2, 1, 1, 1, 2};
  const auto& ps = d.premises;
  auto where = [&](std::string msg) {
    return std::string(typing_rule_name(d.rule)) + " at " + to_string(d.subject()) + " : " +
           to_string(d.type()) + ": " + std::move(msg);
  };
  if (ps.size() != kArity[std::size_t(d.rule)]) return where("wrong number of premises");
  for (const auto& p : ps)
    if (auto e = derivation_error(p, mode)) return e;
  if (!is_restricted(d.type())) return where("type outside the restricted grammar");
  for (const auto& [x, a] : d.context())
    if (!is_restricted(a)) return where("context type outside the restricted grammar");

  auto same_ctx = [&](const Derivation& p) { return contexts_equal(p.context(), d.context(), mode); };
  auto teq = [&](const Type& a, const Type& b) { return types_equal(a, b, mode); };
  const Term& s = d.subject();

  switch (d.rule) {
    case TypingRule::Ax: {
      if (!s.is_var()) return where("axiom on a non-variable");
      auto it = d.context().find(s.name());
      if (it == d.context().end()) return where("variable not declared");
      if (!teq(it->second, d.type())) return where("declared type differs");
      return std::nullopt;
    }
    case TypingRule::ArrowE: {
      if (!s.is_app()) return where("subject is not an application");
      if (!same_ctx(ps[0]) || !same_ctx(ps[1])) return where("context mismatch");
      if (!(ps[0].subject() == s.fun()) || !(ps[1].subject() == s.arg()))
        return where("premise subjects do not match");
      if (!ps[0].type().is_arrow()) return where("function premise is not an arrow");
      if (!teq(ps[0].type().dom(), ps[1].type())) return where("argument type mismatch");
      if (!teq(ps[0].type().cod(), d.type())) return where("result type mismatch");
      return std::nullopt;
    }
    case TypingRule::ArrowI: {
      if (!s.is_abs()) return where("subject is not an abstraction");
      if (!d.type().is_arrow()) return where("type is not an arrow");
      if (!contexts_equal(ps[0].context(), extend(d.context(), s.name(), d.type().dom()), mode))
        return where("premise context is not the extended context");
      if (!(ps[0].subject() == s.body())) return where("premise subject is not the body");
      if (!teq(ps[0].type(), d.type().cod())) return where("body type mismatch");
      return std::nullopt;
    }
    case TypingRule::MeetELeft:
    case TypingRule::MeetERight: {
      if (!same_ctx(ps[0]) || !(ps[0].subject() == s)) return where("premise judgement mismatch");
      if (!ps[0].type().is_meet()) return where("premise type is not an intersection");
      auto cs = ps[0].type().components();
      if (mode == MeetEquality::UpToPermutation) {
        std::set<std::string> have;
        for (const auto& c : cs) have.insert(detail::ac_key(c));
        for (const auto& c : d.type().components())
          if (!have.count(detail::ac_key(c))) return where("conclusion is not a conjunct");
        return std::nullopt;
      }
      Type expect = d.rule == TypingRule::MeetELeft
                        ? cs.front()
                        : Type::meet(std::vector<Type>(cs.begin() + 1, cs.end()));
      if (!(expect == d.type())) return where("projection mismatch");
      return std::nullopt;
    }
    case TypingRule::MeetI: {
      if (!same_ctx(ps[0]) || !same_ctx(ps[1]) || !(ps[0].subject() == s) || !(ps[1].subject() == s))
        return where("premise judgement mismatch");
      if (mode == MeetEquality::Ordered && !ps[0].type().is_simple())
        return where("left premise is not a simple type");
      if (!teq(Type::meet({ps[0].type(), ps[1].type()}), d.type())) return where("intersection mismatch");
      return std::nullopt;
    }
  }
  return where("unknown rule");
}

inline bool check_derivation(const Derivation& d, MeetEquality mode = MeetEquality::Ordered) {
  return !derivation_error(d, mode).has_value();
}

/// No MeetE node has a MeetI node as its immediate premise.
inline bool is_normal(const Derivation& d) {
  bool elim = d.rule == TypingRule::MeetELeft || d.rule == TypingRule::MeetERight;
  for (const auto& p : d.premises) {
    if (elim && p.rule == TypingRule::MeetI) return false;
    if (!is_normal(p)) return false;
  }
  return true;
}

/// Every type occurring in the derivation satisfies the restricted grammar.
inline bool all_types_restricted(const Derivation& d) {
  if (!is_restricted(d.type())) return false;
  for (const auto& [x, a] : d.context())
    if (!is_restricted(a)) return false;
  for (const auto& p : d.premises)
    if (!all_types_restricted(p)) return false;
  return true;
}

}  // namespace lamlab

#endif  // LAMLAB_DERIVATION_HPP
