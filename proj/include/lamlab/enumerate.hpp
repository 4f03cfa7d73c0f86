#ifndef LAMLAB_ENUMERATE_HPP
#define LAMLAB_ENUMERATE_HPP

// Exhaustive term enumeration, one representative per alpha-class.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lamlab/term.hpp"

namespace lamlab {

struct EnumSpec {
  std::size_t max_size = 1;
  std::vector<std::string> free_pool;
  bool closed_only = false;
};

namespace detail {

// Nameless skeleton: bound variables are de Bruijn indices.
struct Skel {
  enum Kind : unsigned char { Bound, Free, Lam, App } kind;
  std::size_t index = 0;  // Bound: de Bruijn index; Free: pool index
  std::vector<Skel> kids;
};

class Enumerator {
 public:
  Enumerator(const EnumSpec& spec) : spec_(spec) {}

  /// Every skeleton of exactly `n` nodes under `depth` binders.
  const std::vector<Skel>& exact(std::size_t n, std::size_t depth) {
    auto key = std::make_pair(n, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Skel> out;
    if (n == 1) {
      for (std::size_t i = 0; i < depth; ++i) out.push_back({Skel::Bound, i, {}});
      if (!spec_.closed_only)
        for (std::size_t i = 0; i < spec_.free_pool.size(); ++i) out.push_back({Skel::Free, i, {}});
    }
    if (n >= 2)
      for (const Skel& b : exact(n - 1, depth + 1)) out.push_back({Skel::Lam, 0, {b}});
    for (std::size_t l = 1; n >= 3 && l <= n - 2; ++l) {
      const auto& fs = exact(l, depth);
      const auto& as = exact(n - 1 - l, depth);
      for (const Skel& f : fs)
        for (const Skel& a : as) out.push_back({Skel::App, 0, {f, a}});
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  Term name(const Skel& s) const {
    std::set<std::string> used;
    collect_free(s, used);
    std::vector<std::string> binders;
    return build(s, used, binders);
  }

 private:
  void collect_free(const Skel& s, std::set<std::string>& used) const {
    if (s.kind == Skel::Free) used.insert(spec_.free_pool[s.index]);
    for (const auto& k : s.kids) collect_free(k, used);
  }

  static std::string candidate(std::size_t i) {
    static const char* base[] = {"x", "y", "z", "u", "v", "w"};
    std::string n = base[i % 6];
    if (i >= 6) n += std::to_string(i / 6);
    return n;
  }

  Term build(const Skel& s, const std::set<std::string>& used, std::vector<std::string>& binders) const {
    switch (s.kind) {
      case Skel::Bound: return Term::var(binders[binders.size() - 1 - s.index]);
      case Skel::Free: return Term::var(spec_.free_pool[s.index]);
      case Skel::Lam: {
        // Binder at depth d takes the d-th candidate that is not a free name.
        std::size_t want = binders.size();
        std::size_t i = 0;
        std::string n;
        for (std::size_t seen = 0;; ++i) {
          n = candidate(i);
          if (used.count(n)) continue;
          if (seen++ == want) break;
        }
        binders.push_back(n);
        Term body = build(s.kids[0], used, binders);
        binders.pop_back();
        return Term::abs(n, body);
      }
      case Skel::App: return Term::app(build(s.kids[0], used, binders), build(s.kids[1], used, binders));
    }
    throw std::logic_error("enumerate: bad skeleton");
  }

  const EnumSpec& spec_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Skel>> memo_;  // node-stable
};

}  // namespace detail

/// All terms of size <= max_size over the free pool, one per alpha-class,
/// ordered by size and then by shape (variables, abstractions, applications).
inline std::vector<Term> enumerate(const EnumSpec& spec) {
  if (spec.max_size < 1) throw std::invalid_argument("enumerate: max_size must be at least 1");
  for (const auto& v : spec.free_pool)
    if (!is_identifier(v)) throw std::invalid_argument("enumerate: bad pool identifier '" + v + "'");
  std::set<std::string> distinct(spec.free_pool.begin(), spec.free_pool.end());
  if (distinct.size() != spec.free_pool.size())
    throw std::invalid_argument("enumerate: duplicate pool identifier");

  detail::Enumerator en(spec);
  std::vector<Term> out;
  for (std::size_t n = 1; n <= spec.max_size; ++n) {
    for (const auto& s : en.exact(n, 0)) out.push_back(en.name(s));
  }
  return out;
}

}  // namespace lamlab

#endif  // LAMLAB_ENUMERATE_HPP
