#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "hillfol/algebra/polynomial.hpp"

namespace hillfol {

namespace detail {

// Recursive-descent parser for  expr := term (('+'|'-') term)*,
// term := unary (('*'|'/') unary)*, unary := '-'? power,
// power := atom ('^' '-'? int)?, atom := number | 'i' | var | '(' expr ')'.
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarList& vars) : text_(text), vars_(vars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                        std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by a nonzero constant");
        acc *= GaussRat(1) / d.coeff({0, 0, 0});
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren && !accept(')')) fail("expected ')' after exponent");
    if (!neg) return base.pow(static_cast<unsigned>(k));
    if (base.size() != 1) fail("negative exponent of a non-monomial");
    const auto& [e, c] = *base.terms().begin();
    Poly inv = Poly::monomial(vars_, {-e[0], -e[1], -e[2]}, GaussRat(1) / c);
    return inv.pow(static_cast<unsigned>(k));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Poly::constant(vars_, GaussRat(parse_rational(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "i") return Poly::constant(vars_, GaussRat::i());
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail("unknown variable '" + name + "'");
      return Poly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression such as "x^2 + y - 1/2*i*x*y" over the given variables.
inline Poly parse_poly(std::string_view text, const VarList& vars = vars_xy()) {
  return detail::PolyParser(text, vars).parse();
}

}  // namespace hillfol
