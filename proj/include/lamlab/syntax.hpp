#ifndef LAMLAB_SYNTAX_HPP
#define LAMLAB_SYNTAX_HPP

// Concrete syntax:
//   term := var | lam | app
//   lam  := ('\' | 'λ') var '.' term
//   app  := '(' term (WS term)+ ')'      n-ary, associates left
//   var  := [a-z][a-zA-Z0-9_']*

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lamlab/term.hpp"

namespace lamlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view src) : src_(src) {}

  Term parse_all() {
    skip_ws();
    Term t = term();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("trailing input", pos_);
    return t;
  }

 private:
  static constexpr std::string_view kLambda = "\xCE\xBB";  // UTF-8 'λ'

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool at_lambda() const {
    return (pos_ < src_.size() && src_[pos_] == '\\') || src_.substr(pos_, 2) == kLambda;
  }

  Term term() {
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    if (at_lambda()) {
      pos_ += src_[pos_] == '\\' ? 1 : kLambda.size();
      std::string x = ident();
      if (pos_ >= src_.size() || src_[pos_] != '.') throw ParseError("expected '.'", pos_);
      ++pos_;
      return Term::abs(std::move(x), term());
    }
    if (src_[pos_] == '(') {
      std::size_t open = pos_++;
      std::vector<Term> items;
      while (true) {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unclosed '('", open);
        if (src_[pos_] == ')') break;
        if (!items.empty() && !(src_[pos_ - 1] == ' ' || src_[pos_ - 1] == '\t' ||
                                src_[pos_ - 1] == '\n' || src_[pos_ - 1] == '\r'))
          throw ParseError("expected whitespace between application items", pos_);
        items.push_back(term());
      }
      if (items.size() < 2) throw ParseError("application needs at least two terms", open);
      ++pos_;
      Term head = items.front();
      return Term::apply(head, std::span<const Term>(items).subspan(1));
    }
    return Term::var(ident());
  }

  std::string ident() {
    std::size_t start = pos_;
    if (pos_ >= src_.size() || src_[pos_] < 'a' || src_[pos_] > 'z')
      throw ParseError("expected identifier", pos_);
    ++pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
          c == '_' || c == '\'')
        ++pos_;
      else
        break;
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline void print_impl(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Abs:
      out += '\\';
      out += t.name();
      out += '.';
      print_impl(t.body(), out);
      return;
    case Term::Kind::App: {
      std::vector<const Term*> args;
      const Term* head = &t;
      while (head->is_app()) {
        args.push_back(&head->arg());
        head = &head->fun();
      }
      out += '(';
      print_impl(*head, out);
      for (std::size_t i = args.size(); i-- > 0;) {
        out += ' ';
        print_impl(*args[i], out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace detail

inline Term parse_term(std::string_view src) { return detail::TermParser(src).parse_all(); }

inline std::string to_string(const Term& t) {
  std::string out;
  detail::print_impl(t, out);
  return out;
}

}  // namespace lamlab

#endif  // LAMLAB_SYNTAX_HPP
