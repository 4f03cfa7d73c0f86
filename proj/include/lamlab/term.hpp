#ifndef LAMLAB_TERM_HPP
#define LAMLAB_TERM_HPP

// Named-variable lambda terms, capture-avoiding substitution, alpha-equivalence
// and left contexts.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lamlab {

/// True for nonempty strings matching [a-z][a-zA-Z0-9_']*.
inline bool is_identifier(std::string_view s) noexcept {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s.substr(1)) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '\'';
    if (!ok) return false;
  }
  return true;
}

namespace detail {
struct TermNode;
}

/// Immutable lambda term. Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Abs, App };

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  /// Left-nested application (head a1 ... an).
  static Term apply(Term head, std::span<const Term> args);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_abs() const noexcept { return kind() == Kind::Abs; }
  bool is_app() const noexcept { return kind() == Kind::App; }

  /// Variable name for Var, binder for Abs.
  const std::string& name() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;

  /// Node count: Var 1, Abs 1 + body, App 1 + fun + arg.
  std::size_t size() const noexcept;

  /// Exact syntactic equality (binder names included).
  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  Term::Kind kind;
  std::string name;
  std::vector<Term> children;  // 0, 1 (body) or 2 (fun, arg)
  std::size_t size;
};
}  // namespace detail

inline Term Term::var(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid identifier '" + name + "'");
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Kind::Var, std::move(name), {}, 1}));
}

inline Term Term::abs(std::string binder, Term body) {
  if (!is_identifier(binder)) throw std::invalid_argument("invalid identifier '" + binder + "'");
  std::size_t n = 1 + body.size();
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Kind::Abs, std::move(binder), {std::move(body)}, n}));
}

inline Term Term::app(Term fun, Term arg) {
  std::size_t n = 1 + fun.size() + arg.size();
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Kind::App, {}, {std::move(fun), std::move(arg)}, n}));
}

inline Term Term::apply(Term head, std::span<const Term> args) {
  for (const Term& a : args) head = app(std::move(head), a);
  return head;
}

inline Term::Kind Term::kind() const noexcept { return node_->kind; }

inline const std::string& Term::name() const {
  if (kind() == Kind::App) throw std::logic_error("Term::name on application");
  return node_->name;
}
inline const Term& Term::body() const {
  if (kind() != Kind::Abs) throw std::logic_error("Term::body on non-abstraction");
  return node_->children[0];
}
inline const Term& Term::fun() const {
  if (kind() != Kind::App) throw std::logic_error("Term::fun on non-application");
  return node_->children[0];
}
inline const Term& Term::arg() const {
  if (kind() != Kind::App) throw std::logic_error("Term::arg on non-application");
  return node_->children[1];
}

inline std::size_t Term::size() const noexcept { return node_->size; }

inline bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->size != b.node_->size) return false;
  if (a.node_->name != b.node_->name) return false;
  for (std::size_t i = 0; i < a.node_->children.size(); ++i)
    if (!(a.node_->children[i] == b.node_->children[i])) return false;
  return true;
}

inline std::size_t size(const Term& t) noexcept { return t.size(); }

// ---------------------------------------------------------------------------
// Free variables

namespace detail {
inline void collect_free(const Term& t, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (const auto& b : bound)
        if (b == t.name()) return;
      out.insert(t.name());
      return;
    case Term::Kind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
  }
}
}  // namespace detail

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  detail::collect_free(t, bound, out);
  return out;
}

inline bool is_free_in(const std::string& x, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x;
    case Term::Kind::Abs: return t.name() != x && is_free_in(x, t.body());
    case Term::Kind::App: return is_free_in(x, t.fun()) || is_free_in(x, t.arg());
  }
  return false;
}

/// Number of free occurrences of x in t.
inline std::size_t nb_occurrences(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x ? 1 : 0;
    case Term::Kind::Abs: return t.name() == x ? 0 : nb_occurrences(t.body(), x);
    case Term::Kind::App: return nb_occurrences(t.fun(), x) + nb_occurrences(t.arg(), x);
  }
  return 0;
}

/// Primes `base` until `taken` rejects it no longer.
template <class Taken>
std::string fresh_name(std::string base, Taken&& taken) {
  while (taken(base)) base.push_back('\'');
  return base;
}

// ---------------------------------------------------------------------------
// Substitution

using SubstitutionMap = std::map<std::string, Term>;

/// Child selector on the path from a term's root to one of its subterms.
enum class Step : std::uint8_t { Body, Fun, Arg };
using Path = std::vector<Step>;

namespace detail {

struct SubstTracker {
  std::string var;
  Path current;
  std::vector<Path> landed;
};

inline Term substitute_impl(const Term& t, const SubstitutionMap& sigma, SubstTracker* track) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = sigma.find(t.name());
      if (it == sigma.end()) return t;
      if (track && t.name() == track->var) track->landed.push_back(track->current);
      return it->second;
    }
    case Term::Kind::App: {
      if (track) track->current.push_back(Step::Fun);
      Term f = substitute_impl(t.fun(), sigma, track);
      if (track) track->current.back() = Step::Arg;
      Term a = substitute_impl(t.arg(), sigma, track);
      if (track) track->current.pop_back();
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Abs: break;
  }

  const std::string& y = t.name();
  SubstitutionMap inner;
  std::set<std::string> image_fv;
  for (const auto& [x, u] : sigma) {
    if (x == y || !is_free_in(x, t.body())) continue;
    inner.emplace(x, u);
    for (auto& v : free_vars(u)) image_fv.insert(std::move(v));
  }
  if (inner.empty()) return t;

  std::string binder = y;
  if (image_fv.count(y)) {
    std::set<std::string> body_fv = free_vars(t.body());
    binder = fresh_name(y, [&](const std::string& n) {
      return image_fv.count(n) > 0 || body_fv.count(n) > 0 || inner.count(n) > 0;
    });
    inner.insert_or_assign(y, Term::var(binder));
  }
  if (track) track->current.push_back(Step::Body);
  Term body = substitute_impl(t.body(), inner, track);
  if (track) track->current.pop_back();
  return Term::abs(std::move(binder), std::move(body));
}

}  // namespace detail

/// Simultaneous capture-avoiding substitution sigma(t). A binder is renamed
/// (by priming) only when it would capture a free variable of an image.
inline Term substitute(const Term& t, const SubstitutionMap& sigma) {
  if (sigma.empty()) return t;
  return detail::substitute_impl(t, sigma, nullptr);
}

inline Term substitute(const Term& t, const std::string& x, const Term& u) {
  return substitute(t, SubstitutionMap{{x, u}});
}

struct TrackedSubstitution {
  Term term;
  /// Paths in `term` where a copy of the substituted term landed.
  std::vector<Path> positions;
};

/// a[x:=b] (the same term `substitute` builds) plus the landing paths of the
/// nb(a,x) copies of b.
inline TrackedSubstitution substitute_tracking(const Term& a, const std::string& x, const Term& b) {
  detail::SubstTracker track{x, {}, {}};
  Term out = detail::substitute_impl(a, SubstitutionMap{{x, b}}, &track);
  return {std::move(out), std::move(track.landed)};
}

/// Renames the binder of an abstraction, preserving its meaning.
inline Term rename_binder(const Term& abs, const std::string& fresh) {
  if (abs.name() == fresh) return abs;
  return Term::abs(fresh, substitute(abs.body(), abs.name(), Term::var(fresh)));
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {
inline bool alpha_eq_impl(const Term& a, const Term& b, std::vector<std::string>& ba,
                          std::vector<std::string>& bb) {
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      // Innermost binder wins on both sides; indices must agree.
      std::size_t n = ba.size();
      std::size_t ia = n, ib = n;
      for (std::size_t i = n; i-- > 0;)
        if (ba[i] == a.name()) { ia = i; break; }
      for (std::size_t i = n; i-- > 0;)
        if (bb[i] == b.name()) { ib = i; break; }
      if (ia != ib) return false;
      return ia != n || a.name() == b.name();
    }
    case Term::Kind::Abs: {
      ba.push_back(a.name());
      bb.push_back(b.name());
      bool r = alpha_eq_impl(a.body(), b.body(), ba, bb);
      ba.pop_back();
      bb.pop_back();
      return r;
    }
    case Term::Kind::App:
      return alpha_eq_impl(a.fun(), b.fun(), ba, bb) && alpha_eq_impl(a.arg(), b.arg(), ba, bb);
  }
  return false;
}

inline void canonical_impl(const Term& t, std::vector<std::string>& bound, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (bound[i] == t.name()) {
          out += '#';
          out += std::to_string(bound.size() - 1 - i);
          return;
        }
      }
      out += t.name();
      return;
    case Term::Kind::Abs:
      out += '\\';
      bound.push_back(t.name());
      canonical_impl(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::App:
      out += '(';
      canonical_impl(t.fun(), bound, out);
      out += ' ';
      canonical_impl(t.arg(), bound, out);
      out += ')';
      return;
  }
}
}  // namespace detail

inline bool alpha_eq(const Term& a, const Term& b) {
  std::vector<std::string> ba, bb;
  return detail::alpha_eq_impl(a, b, ba, bb);
}

/// Locally-nameless key: equal keys iff alpha-equivalent terms.
inline std::string canonical_key(const Term& t) {
  std::string out;
  std::vector<std::string> bound;
  detail::canonical_impl(t, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Paths

inline const Term& subterm_at(const Term& t, std::span<const Step> path) {
  const Term* cur = &t;
  for (Step s : path) {
    switch (s) {
      case Step::Body: cur = &cur->body(); break;
      case Step::Fun: cur = &cur->fun(); break;
      case Step::Arg: cur = &cur->arg(); break;
    }
  }
  return *cur;
}

/// t with the subterm at `path` replaced by `replacement` (no renaming).
inline Term replace_at(const Term& t, std::span<const Step> path, const Term& replacement) {
  if (path.empty()) return replacement;
  auto rest = path.subspan(1);
  switch (path[0]) {
    case Step::Body: return Term::abs(t.name(), replace_at(t.body(), rest, replacement));
    case Step::Fun: return Term::app(replace_at(t.fun(), rest, replacement), t.arg());
    case Step::Arg: return Term::app(t.fun(), replace_at(t.arg(), rest, replacement));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Left contexts: [] | \x.L | (L M)

class LeftContext {
 public:
  struct Frame {
    bool is_abs;
    std::string binder;         // is_abs
    std::shared_ptr<Term> arg;  // !is_abs
  };

  static LeftContext hole() { return {}; }
  static LeftContext abs(std::string binder, LeftContext inner) {
    if (!is_identifier(binder)) throw std::invalid_argument("invalid identifier '" + binder + "'");
    inner.frames_.insert(inner.frames_.begin(), Frame{true, std::move(binder), nullptr});
    return inner;
  }
  static LeftContext app(LeftContext inner, Term arg) {
    inner.frames_.insert(inner.frames_.begin(),
                         Frame{false, {}, std::make_shared<Term>(std::move(arg))});
    return inner;
  }

  /// Outermost frame first.
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  bool is_hole() const noexcept { return frames_.empty(); }

 private:
  std::vector<Frame> frames_;
};

/// L[t]: no capture avoidance; binders of L may bind free variables of t.
inline Term plug(const LeftContext& ctx, Term t) {
  const auto& fr = ctx.frames();
  for (std::size_t i = fr.size(); i-- > 0;)
    t = fr[i].is_abs ? Term::abs(fr[i].binder, std::move(t)) : Term::app(std::move(t), *fr[i].arg);
  return t;
}

/// Every way of writing t as L[u], outermost split first (L = [] comes first).
inline std::vector<std::pair<LeftContext, Term>> left_splits(const Term& t) {
  std::vector<std::pair<LeftContext, Term>> out;
  std::vector<LeftContext::Frame> frames;
  const Term* cur = &t;
  while (true) {
    LeftContext l;
    for (std::size_t i = frames.size(); i-- > 0;)
      l = frames[i].is_abs ? LeftContext::abs(frames[i].binder, std::move(l))
                           : LeftContext::app(std::move(l), *frames[i].arg);
    out.emplace_back(std::move(l), *cur);
    if (cur->is_abs()) {
      frames.push_back({true, cur->name(), nullptr});
      cur = &cur->body();
    } else if (cur->is_app()) {
      frames.push_back({false, {}, std::make_shared<Term>(cur->arg())});
      cur = &cur->fun();
    } else {
      break;
    }
  }
  return out;
}

}  // namespace lamlab

#endif  // LAMLAB_TERM_HPP
