#ifndef LAMLAB_TYPES_HPP
#define LAMLAB_TYPES_HPP

// Restricted intersection types:
//   S ::= atom | T -> S
//   T ::= S | S /\ T
// A Meet is stored as a flat list of at least two simple types, so no
// intersection ever sits to the right of an arrow.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lamlab {

namespace detail {
struct TypeNode;
}

class Type {
 public:
  enum class Kind : unsigned char { Atom, Arrow, Meet };

  static Type atom(std::string name);
  /// `cod` must be simple.
  static Type arrow(Type dom, Type cod);
  /// Intersection of the given types, flattened. A single part is returned as is.
  static Type meet(const std::vector<Type>& parts);

  Kind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_arrow() const noexcept { return kind() == Kind::Arrow; }
  bool is_meet() const noexcept { return kind() == Kind::Meet; }
  bool is_simple() const noexcept { return !is_meet(); }

  const std::string& name() const;
  const Type& dom() const;
  const Type& cod() const;
  /// The simple conjuncts; a simple type is its own single conjunct.
  std::vector<Type> components() const;

  friend bool operator==(const Type& a, const Type& b) noexcept;

 private:
  explicit Type(std::shared_ptr<const detail::TypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TypeNode> node_;
};

namespace detail {
struct TypeNode {
  Type::Kind kind;
  std::string name;
  std::vector<Type> parts;  // Arrow: {dom, cod}; Meet: conjuncts
};
}  // namespace detail

inline Type Type::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Atom, std::move(name), {}}));
}

inline Type Type::arrow(Type dom, Type cod) {
  if (!cod.is_simple()) throw std::invalid_argument("intersection to the right of an arrow");
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Arrow, {}, {std::move(dom), std::move(cod)}}));
}

inline Type Type::meet(const std::vector<Type>& parts) {
  std::vector<Type> flat;
  for (const Type& p : parts) {
    if (p.is_meet())
      flat.insert(flat.end(), p.node_->parts.begin(), p.node_->parts.end());
    else
      flat.push_back(p);
  }
  if (flat.empty()) throw std::invalid_argument("empty intersection");
  if (flat.size() == 1) return flat.front();
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Meet, {}, std::move(flat)}));
}

inline Type::Kind Type::kind() const noexcept { return node_->kind; }

inline const std::string& Type::name() const {
  if (!is_atom()) throw std::logic_error("Type::name on non-atom");
  return node_->name;
}
inline const Type& Type::dom() const {
  if (!is_arrow()) throw std::logic_error("Type::dom on non-arrow");
  return node_->parts[0];
}
inline const Type& Type::cod() const {
  if (!is_arrow()) throw std::logic_error("Type::cod on non-arrow");
  return node_->parts[1];
}
inline std::vector<Type> Type::components() const {
  if (is_meet()) return node_->parts;
  return {*this};
}

inline bool operator==(const Type& a, const Type& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->name != b.node_->name) return false;
  return a.node_->parts == b.node_->parts;
}

/// The atom used by inference.
inline Type designated_atom() { return Type::atom("o"); }

/// D1 -> ... -> Dn -> result.
inline Type arrow_chain(const std::vector<Type>& doms, Type result) {
  for (std::size_t i = doms.size(); i-- > 0;) result = Type::arrow(doms[i], std::move(result));
  return result;
}

/// Symbol count: atoms 1, each arrow 1, each intersection symbol 1.
inline std::size_t type_size(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Atom: return 1;
    case Type::Kind::Arrow: return 1 + type_size(a.dom()) + type_size(a.cod());
    case Type::Kind::Meet: {
      auto cs = a.components();
      std::size_t n = cs.size() - 1;
      for (const Type& c : cs) n += type_size(c);
      return n;
    }
  }
  return 0;
}

/// Restricted-grammar check; holds for every Type by construction.
inline bool is_restricted(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Atom: return true;
    case Type::Kind::Arrow: return a.cod().is_simple() && is_restricted(a.dom()) && is_restricted(a.cod());
    case Type::Kind::Meet: {
      auto cs = a.components();
      if (cs.size() < 2) return false;
      return std::all_of(cs.begin(), cs.end(),
                         [](const Type& c) { return c.is_simple() && is_restricted(c); });
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing: `->` right-associative, `/\` binds tighter than `->`.

inline std::string to_string(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Atom: return a.name();
    case Type::Kind::Arrow: {
      std::string d = to_string(a.dom());
      if (a.dom().is_arrow()) d = "(" + d + ")";
      return d + " -> " + to_string(a.cod());
    }
    case Type::Kind::Meet: {
      std::string out;
      for (const Type& c : a.components()) {
        if (!out.empty()) out += " /\\ ";
        out += c.is_arrow() ? "(" + to_string(c) + ")" : to_string(c);
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Meet comparison modes

enum class MeetEquality { Ordered, UpToPermutation };

namespace detail {
/// Canonical text where every intersection is sorted and deduplicated.
inline std::string ac_key(const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Atom: return a.name();
    case Type::Kind::Arrow: return "(" + ac_key(a.dom()) + ">" + ac_key(a.cod()) + ")";
    case Type::Kind::Meet: {
      std::vector<std::string> ks;
      for (const Type& c : a.components()) ks.push_back(ac_key(c));
      std::sort(ks.begin(), ks.end());
      ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
      if (ks.size() == 1) return ks.front();
      std::string out = "[";
      for (const auto& k : ks) out += k + ",";
      return out + "]";
    }
  }
  return {};
}
}  // namespace detail

inline bool types_equal(const Type& a, const Type& b, MeetEquality mode = MeetEquality::Ordered) {
  if (mode == MeetEquality::Ordered) return a == b;
  return detail::ac_key(a) == detail::ac_key(b);
}

// ---------------------------------------------------------------------------
// Unrestricted types and the restriction transform

/// Type tree built from atoms, -> and /\ with no restriction.
struct RawType {
  enum class Kind : unsigned char { Atom, Arrow, Meet };
  Kind kind;
  std::string name;
  std::shared_ptr<const RawType> left, right;

  static RawType atom(std::string n) { return {Kind::Atom, std::move(n), nullptr, nullptr}; }
  static RawType arrow(RawType a, RawType b) {
    return {Kind::Arrow, {}, std::make_shared<const RawType>(std::move(a)),
            std::make_shared<const RawType>(std::move(b))};
  }
  static RawType meet(RawType a, RawType b) {
    return {Kind::Meet, {}, std::make_shared<const RawType>(std::move(a)),
            std::make_shared<const RawType>(std::move(b))};
  }
};

inline std::string to_string(const RawType& u) {
  switch (u.kind) {
    case RawType::Kind::Atom: return u.name;
    case RawType::Kind::Arrow: {
      std::string d = to_string(*u.left);
      if (u.left->kind == RawType::Kind::Arrow) d = "(" + d + ")";
      return d + " -> " + to_string(*u.right);
    }
    case RawType::Kind::Meet: {
      auto side = [](const RawType& s) {
        return s.kind == RawType::Kind::Atom ? to_string(s) : "(" + to_string(s) + ")";
      };
      return side(*u.left) + " /\\ " + side(*u.right);
    }
  }
  return {};
}

/// A -> (B /\ C) becomes (A -> B) /\ (A -> C), recursively; nested
/// intersections are flattened.
inline Type restrict_type(const RawType& u) {
  switch (u.kind) {
    case RawType::Kind::Atom: return Type::atom(u.name);
    case RawType::Kind::Meet: return Type::meet({restrict_type(*u.left), restrict_type(*u.right)});
    case RawType::Kind::Arrow: {
      Type dom = restrict_type(*u.left);
      std::vector<Type> parts;
      for (const Type& c : restrict_type(*u.right).components()) parts.push_back(Type::arrow(dom, c));
      return Type::meet(parts);
    }
  }
  throw std::logic_error("restrict_type: bad node");
}

class TypeParseError : public std::runtime_error {
 public:
  TypeParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)) {}
};

namespace detail {
class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  RawType parse_all() {
    RawType t = arrow();
    ws();
    if (pos_ != s_.size()) throw TypeParseError("trailing input", pos_);
    return t;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(std::string_view tok) {
    ws();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  RawType arrow() {
    RawType lhs = meet();
    if (eat("->")) return RawType::arrow(std::move(lhs), arrow());
    return lhs;
  }
  RawType meet() {
    RawType lhs = primary();
    if (eat("/\\")) return RawType::meet(std::move(lhs), meet());
    return lhs;
  }
  RawType primary() {
    ws();
    if (eat("(")) {
      RawType t = arrow();
      if (!eat(")")) throw TypeParseError("expected ')'", pos_);
      return t;
    }
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == 'o' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return RawType::atom("o");
    }
    if (pos_ >= s_.size() || s_[pos_] < 'A' || s_[pos_] > 'Z')
      throw TypeParseError("expected type atom", pos_);
    ++pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return RawType::atom(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};
}  // namespace detail

/// Atoms are `o` or [A-Z][a-zA-Z0-9]*.
inline RawType parse_raw_type(std::string_view s) { return detail::TypeParser(s).parse_all(); }
inline Type parse_type(std::string_view s) { return restrict_type(parse_raw_type(s)); }

// ---------------------------------------------------------------------------
// Contexts

using Context = std::map<std::string, Type>;

/// Pointwise meet; variables in only one context keep their type.
inline Context context_meet(const Context& a, const Context& b) {
  Context out = a;
  for (const auto& [x, t] : b) {
    auto it = out.find(x);
    if (it == out.end())
      out.emplace(x, t);
    else
      it->second = Type::meet({it->second, t});
  }
  return out;
}

inline bool contexts_equal(const Context& a, const Context& b,
                           MeetEquality mode = MeetEquality::Ordered) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !types_equal(ia->second, ib->second, mode)) return false;
  return true;
}

inline std::string to_string(const Context& ctx) {
  std::string out = "{";
  for (const auto& [x, t] : ctx) {
    if (out.size() > 1) out += ", ";
    out += x + ": " + to_string(t);
  }
  return out + "}";
}

}  // namespace lamlab

#endif  // LAMLAB_TYPES_HPP
