#ifndef LAMLAB_TYPE_SEARCH_HPP
#define LAMLAB_TYPE_SEARCH_HPP

// Bounded, goal-directed search for normal derivations.
//
// Checking G |- t : A proceeds by the shape of t: intersections split into
// their conjuncts, abstractions need an arrow, variable-headed applications
// pick a conjunct of the head's declared type with enough arrows, and
// redex-headed applications are typed through their beta-reduct (subject
// expansion), giving the bound variable the intersection of the types of the
// argument's copies. An erased argument is typed by synthesis, where the
// types of locally bound variables are assembled from the uses made of them.
//
// The budget counts search steps. Running out means "not found", never
// "not typable".

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lamlab/derivation.hpp"
#include "lamlab/reduction.hpp"
#include "lamlab/term.hpp"
#include "lamlab/types.hpp"

namespace lamlab {

class TypeSearch {
 public:
  explicit TypeSearch(std::size_t budget) : budget_(budget) {}

  /// A normal derivation of ctx |- t : a, if one is found within budget.
  std::optional<Derivation> check(const Context& ctx, const Term& t, const Type& a) {
    return guarded([&] { return check_impl(ctx, t, a); });
  }

  /// Some type for t in ctx, with its derivation.
  std::optional<std::pair<Type, Derivation>> synthesize(const Context& ctx, const Term& t) {
    return guarded([&] { return synthesize_impl(ctx, t); });
  }

  /// Types t keeping the declarations of `fixed`; every other free variable
  /// receives the intersection of the types its occurrences demand.
  std::optional<Typing> type_with(const Context& fixed, const Term& t) {
    return guarded([&]() -> std::optional<Typing> {
      std::set<std::string> open;
      for (const auto& v : free_vars(t))
        if (!fixed.count(v)) open.insert(v);
      auto st = synth_type(fixed, open, t);
      if (!st) return std::nullopt;
      Context ctx = fixed;
      for (const auto& v : open) {
        auto it = st->second.find(v);
        ctx.insert_or_assign(v, it == st->second.end() ? designated_atom() : Type::meet(it->second));
      }
      auto d = check_impl(ctx, t, st->first);
      if (!d) return std::nullopt;
      return Typing{std::move(ctx), st->first, std::move(*d)};
    });
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  struct OutOfBudget {};
  using Demands = std::map<std::string, std::vector<Type>>;

  template <class F>
  auto guarded(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const OutOfBudget&) {
      exhausted_ = true;
      return std::nullopt;
    }
  }

  void tick() {
    if (++steps_ > budget_) throw OutOfBudget{};
  }

  static void merge(Demands& into, const Demands& from) {
    for (const auto& [v, ts] : from) {
      auto& dst = into[v];
      dst.insert(dst.end(), ts.begin(), ts.end());
    }
  }

  /// Domains D1..Dn and remainder R when `a` is D1 -> ... -> Dn -> R.
  static std::optional<std::pair<std::vector<Type>, Type>> peel(Type a, std::size_t n) {
    std::vector<Type> doms;
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.is_arrow()) return std::nullopt;
      doms.push_back(a.dom());
      Type next = a.cod();
      a = std::move(next);
    }
    return std::make_pair(std::move(doms), std::move(a));
  }

  std::optional<Derivation> check_impl(const Context& ctx, const Term& t, const Type& a) {
    tick();
    if (a.is_meet()) {
      std::vector<Derivation> parts;
      for (const Type& c : a.components()) {
        auto d = check_impl(ctx, t, c);
        if (!d) return std::nullopt;
        parts.push_back(std::move(*d));
      }
      return meet_intro(std::move(parts));
    }
    switch (t.kind()) {
      case Term::Kind::Var:
        return var_derive(ctx, t.name(), a);
      case Term::Kind::Abs: {
        if (!a.is_arrow()) return std::nullopt;
        auto body = check_impl(extend(ctx, t.name(), a.dom()), t.body(), a.cod());
        if (!body) return std::nullopt;
        return arrow_intro(ctx, t.name(), a.dom(), std::move(*body));
      }
      case Term::Kind::App: break;
    }

    auto dec = *decompose(t);
    const auto& args = dec.args;
    if (dec.head.is_var()) {
      auto it = ctx.find(dec.head.name());
      if (it == ctx.end()) return std::nullopt;
      for (const Type& comp : it->second.components()) {
        auto pr = peel(comp, args.size());
        if (!pr || !(pr->second == a)) continue;
        std::vector<Derivation> arg_ds;
        for (std::size_t i = 0; i < args.size(); ++i) {
          auto d = check_impl(ctx, args[i], pr->first[i]);
          if (!d) break;
          arg_ds.push_back(std::move(*d));
        }
        if (arg_ds.size() != args.size()) continue;
        Derivation acc = *var_derive(ctx, dec.head.name(), comp);
        for (auto& d : arg_ds) acc = arrow_elim(std::move(acc), std::move(d));
        return acc;
      }
      return std::nullopt;
    }

    // Redex head: type the beta-reduct, then expand.
    const Term& lam = dec.head;
    auto tracked = substitute_tracking(lam.body(), lam.name(), args[0]);
    Term reduct = Term::apply(tracked.term, std::span<const Term>(args).subspan(1));
    auto dr = check_impl(ctx, reduct, a);
    if (!dr) return std::nullopt;
    std::optional<Derivation> vacuous;
    if (tracked.positions.empty()) {
      auto s = synthesize_impl(ctx, args[0]);
      if (!s) return std::nullopt;
      vacuous = std::move(s->second);
    }
    return expand_redex(ctx, lam, args, *dr, tracked.positions, vacuous);
  }

  std::optional<std::pair<Type, Derivation>> synthesize_impl(const Context& ctx, const Term& t) {
    auto st = synth_type(ctx, {}, t);
    if (!st) return std::nullopt;
    auto d = check_impl(ctx, t, st->first);
    if (!d) return std::nullopt;
    return std::make_pair(st->first, std::move(*d));
  }

  /// A type for t where variables in `open` have no declared type yet; the
  /// demands record the simple types each open variable is used at.
  std::optional<std::pair<Type, Demands>> synth_type(const Context& fixed,
                                                     const std::set<std::string>& open,
                                                     const Term& t) {
    tick();
    switch (t.kind()) {
      case Term::Kind::Var: {
        if (open.count(t.name())) return std::make_pair(designated_atom(), Demands{{t.name(), {designated_atom()}}});
        auto it = fixed.find(t.name());
        if (it == fixed.end()) return std::nullopt;
        return std::make_pair(it->second, Demands{});
      }
      case Term::Kind::Abs: {
        const std::string& x = t.name();
        Context inner_fixed = fixed;
        inner_fixed.erase(x);
        std::set<std::string> inner_open = open;
        inner_open.insert(x);
        auto body = synth_type(inner_fixed, inner_open, t.body());
        if (!body) return std::nullopt;
        Type dom = designated_atom();
        if (auto it = body->second.find(x); it != body->second.end()) {
          dom = Type::meet(it->second);
          body->second.erase(it);
        }
        std::vector<Type> parts;
        for (const Type& c : body->first.components()) parts.push_back(Type::arrow(dom, c));
        return std::make_pair(Type::meet(parts), std::move(body->second));
      }
      case Term::Kind::App: break;
    }

    auto dec = *decompose(t);
    const auto& args = dec.args;
    if (dec.head.is_var() && open.count(dec.head.name())) {
      Demands dem;
      std::vector<Type> doms;
      for (const Term& a : args) {
        auto s = synth_type(fixed, open, a);
        if (!s) return std::nullopt;
        doms.push_back(s->first);
        merge(dem, s->second);
      }
      dem[dec.head.name()].push_back(arrow_chain(doms, designated_atom()));
      return std::make_pair(designated_atom(), std::move(dem));
    }
    if (dec.head.is_var()) {
      auto it = fixed.find(dec.head.name());
      if (it == fixed.end()) return std::nullopt;
      for (const Type& comp : it->second.components()) {
        auto pr = peel(comp, args.size());
        if (!pr) continue;
        Demands dem;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
          auto d = check_demand(fixed, open, args[i], pr->first[i]);
          if (d) merge(dem, *d);
          else ok = false;
        }
        if (ok) return std::make_pair(pr->second, std::move(dem));
      }
      return std::nullopt;
    }

    const Term& lam = dec.head;
    Term reduct = Term::apply(substitute(lam.body(), lam.name(), args[0]),
                              std::span<const Term>(args).subspan(1));
    auto r = synth_type(fixed, open, reduct);
    if (!r) return std::nullopt;
    if (!is_free_in(lam.name(), lam.body())) {
      auto s = synth_type(fixed, open, args[0]);
      if (!s) return std::nullopt;
      merge(r->second, s->second);
    }
    return r;
  }

  std::optional<Demands> check_demand(const Context& fixed, const std::set<std::string>& open,
                                      const Term& t, const Type& a) {
    tick();
    if (a.is_meet()) {
      Demands dem;
      for (const Type& c : a.components()) {
        auto d = check_demand(fixed, open, t, c);
        if (!d) return std::nullopt;
        merge(dem, *d);
      }
      return dem;
    }
    switch (t.kind()) {
      case Term::Kind::Var: {
        if (open.count(t.name())) return Demands{{t.name(), {a}}};
        auto it = fixed.find(t.name());
        if (it == fixed.end()) return std::nullopt;
        for (const Type& c : it->second.components())
          if (c == a) return Demands{};
        return std::nullopt;
      }
      case Term::Kind::Abs: {
        if (!a.is_arrow()) return std::nullopt;
        std::set<std::string> inner_open = open;
        inner_open.erase(t.name());
        return check_demand(extend(fixed, t.name(), a.dom()), inner_open, t.body(), a.cod());
      }
      case Term::Kind::App: break;
    }

    auto dec = *decompose(t);
    const auto& args = dec.args;
    if (dec.head.is_var() && open.count(dec.head.name())) {
      Demands dem;
      std::vector<Type> doms;
      for (const Term& x : args) {
        auto s = synth_type(fixed, open, x);
        if (!s) return std::nullopt;
        doms.push_back(s->first);
        merge(dem, s->second);
      }
      dem[dec.head.name()].push_back(arrow_chain(doms, a));
      return dem;
    }
    if (dec.head.is_var()) {
      auto it = fixed.find(dec.head.name());
      if (it == fixed.end()) return std::nullopt;
      for (const Type& comp : it->second.components()) {
        auto pr = peel(comp, args.size());
        if (!pr || !(pr->second == a)) continue;
        Demands dem;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
          auto d = check_demand(fixed, open, args[i], pr->first[i]);
          if (d) merge(dem, *d);
          else ok = false;
        }
        if (ok) return dem;
      }
      return std::nullopt;
    }

    const Term& lam = dec.head;
    Term reduct = Term::apply(substitute(lam.body(), lam.name(), args[0]),
                              std::span<const Term>(args).subspan(1));
    auto r = check_demand(fixed, open, reduct, a);
    if (!r) return std::nullopt;
    if (!is_free_in(lam.name(), lam.body())) {
      auto s = synth_type(fixed, open, args[0]);
      if (!s) return std::nullopt;
      merge(*r, s->second);
    }
    return r;
  }

  std::size_t budget_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
};

/// Bounded search for a normal derivation of ctx |- t : a. An empty result
/// means nothing was found within `budget` steps.
inline std::optional<Derivation> find_derivation(const Context& ctx, const Term& t, const Type& a,
                                                 std::size_t budget) {
  if (budget < 1) throw std::invalid_argument("find_derivation: budget must be at least 1");
  return TypeSearch(budget).check(ctx, t, a);
}

}  // namespace lamlab

#endif  // LAMLAB_TYPE_SEARCH_HPP
