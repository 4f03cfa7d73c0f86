#ifndef LAMLAB_SN_TYPING_HPP
#define LAMLAB_SN_TYPING_HPP

// Typing of beta-strongly-normalizing terms, by recursion on
// <eta_beta(t), size(t)>:
//
//   \x.u           type u; x gets its type from u's context (o if unused).
//   (x v1 ... vn)  type each vj as Gj |- vj : Bj independently; the result is
//                  /\Gj with x : /\Gj(x) /\ (B1 -> ... -> Bn -> o), typed o.
//   (\x.a b c...)  type the reduct (a[x:=b] c...); x and b receive the
//                  intersection of the types given to the copies of b, or b
//                  is typed on its own when x does not occur in a.
//
// Every derivation produced is normal and uses only restricted types.

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lamlab/derivation.hpp"
#include "lamlab/normalization.hpp"
#include "lamlab/reduction.hpp"
#include "lamlab/term.hpp"
#include "lamlab/types.hpp"

namespace lamlab {

using TypedResult = Typing;

class InferenceError : public std::runtime_error {
 public:
  enum class Reason { NotBetaSN, FuelExhausted };
  InferenceError(Reason r, const std::string& msg) : std::runtime_error(msg), reason_(r) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

namespace detail {

class Inferencer {
 public:
  TypedResult run(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        Context ctx{{t.name(), designated_atom()}};
        return {ctx, designated_atom(), axiom(ctx, t.name())};
      }
      case Term::Kind::Abs: return abstraction(t);
      case Term::Kind::App: break;
    }
    auto dec = *decompose(t);
    return dec.head.is_var() ? variable_headed(dec) : redex_headed(dec);
  }

 private:
  TypedResult abstraction(const Term& t) {
    const std::string& x = t.name();
    TypedResult body = run(t.body());
    Type dom = designated_atom();
    if (auto it = body.context.find(x); it != body.context.end()) {
      dom = it->second;
      body.context.erase(it);
    }
    Context ctx = std::move(body.context);
    auto d = rebase(body.derivation, extend(ctx, x, dom), t.body());
    if (!d) throw std::logic_error("inference: cannot weaken body derivation");
    Type ty = Type::arrow(dom, body.type);
    return {ctx, ty, arrow_intro(ctx, x, dom, std::move(*d))};
  }

  TypedResult variable_headed(const HeadDecomposition& dec) {
    const std::string& x = dec.head.name();
    std::vector<TypedResult> parts;
    Context ctx;
    std::vector<Type> doms;
    for (const Term& v : dec.args) {
      parts.push_back(run(v));
      ctx = context_meet(ctx, parts.back().context);
      doms.push_back(parts.back().type);
    }
    Type fn = arrow_chain(doms, designated_atom());
    auto it = ctx.find(x);
    Type declared = it == ctx.end() ? fn : Type::meet({it->second, fn});
    ctx.insert_or_assign(x, declared);

    Derivation acc = *var_derive(ctx, x, fn);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      auto d = rebase(parts[j].derivation, ctx, dec.args[j]);
      if (!d) throw std::logic_error("inference: cannot move argument derivation to merged context");
      acc = arrow_elim(std::move(acc), std::move(*d));
    }
    return {ctx, designated_atom(), std::move(acc)};
  }

  TypedResult redex_headed(const HeadDecomposition& dec) {
    const Term& lam = dec.head;
    const auto& args = dec.args;
    auto tracked = substitute_tracking(lam.body(), lam.name(), args[0]);
    Term reduct = Term::apply(tracked.term, std::span<const Term>(args).subspan(1));
    TypedResult r = run(reduct);

    Context ctx = r.context;
    std::optional<Derivation> vacuous;
    if (tracked.positions.empty()) {
      TypedResult b = run(args[0]);
      ctx = context_meet(ctx, b.context);
      vacuous = rebase(b.derivation, ctx, args[0]);
      if (!vacuous) throw std::logic_error("inference: cannot move erased argument derivation");
    }
    auto d = expand_redex(ctx, lam, args, r.derivation, tracked.positions, vacuous);
    if (!d) throw std::logic_error("inference: expansion of the reduct derivation failed");
    return {std::move(ctx), r.type, std::move(*d)};
  }
};

}  // namespace detail

/// Types any term certified beta-SN within `fuel`; throws InferenceError otherwise.
inline TypedResult infer(const Term& t, std::size_t fuel = kDefaultFuel) {
  SnVerdict v = decide_sn(t, RuleSet::beta(), fuel);
  if (is_not_sn(v))
    throw InferenceError(InferenceError::Reason::NotBetaSN, "term is not beta-strongly-normalizing");
  if (is_exhausted(v))
    throw InferenceError(InferenceError::Reason::FuelExhausted,
                         "fuel exhausted while deciding beta-strong-normalization");
  return detail::Inferencer{}.run(t);
}

inline std::optional<TypedResult> try_infer(const Term& t, std::size_t fuel = kDefaultFuel) {
  try {
    return infer(t, fuel);
  } catch (const InferenceError&) {
    return std::nullopt;
  }
}

/// <size(A), eta(t), size(t), eta(sigma,t), size(sigma,t)>, ordered lexicographically.
struct Measure {
  std::size_t type_size = 0;
  std::size_t eta = 0;
  std::size_t size = 0;
  std::size_t eta_sigma = 0;
  std::size_t size_sigma = 0;

  friend auto operator<=>(const Measure&, const Measure&) = default;
};

inline Measure induction_measure(const Term& t, const SubstitutionMap& sigma, const Type& a,
                                 RuleSet rules, std::size_t fuel = kDefaultFuel) {
  return {type_size(a), eta(t, rules, fuel), t.size(), eta_sigma(sigma, t, rules, fuel),
          size_sigma(sigma, t)};
}

/// The common type of the images when every image is typable and all the
/// inferred types agree up to reordering and duplication of intersections.
/// The empty substitution is fair with the designated atom.
inline std::optional<Type> is_fair(const SubstitutionMap& sigma, std::size_t fuel = kDefaultFuel) {
  if (sigma.empty()) return designated_atom();
  std::optional<Type> common;
  for (const auto& [x, u] : sigma) {
    auto r = try_infer(u, fuel);
    if (!r) return std::nullopt;
    if (!common)
      common = r->type;
    else if (!types_equal(*common, r->type, MeetEquality::UpToPermutation))
      return std::nullopt;
  }
  return common;
}

}  // namespace lamlab

#endif  // LAMLAB_SN_TYPING_HPP
