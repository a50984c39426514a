#include "thue/funcfield/expr.hpp"

#include <cctype>

namespace thue::ff {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    auto e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ContractError("parse error at column " + std::to_string(pos_ + 1) + " in '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  ExprPtr sum() {
    auto e = product();
    while (true) {
      if (eat('+'))
        e = node(Expr::Kind::Add, e, product());
      else if (eat('-'))
        e = node(Expr::Kind::Sub, e, product());
      else
        return e;
    }
  }
  ExprPtr product() {
    auto e = unary();
    while (true) {
      if (eat('*'))
        e = node(Expr::Kind::Mul, e, unary());
      else if (eat('/'))
        e = node(Expr::Kind::Div, e, unary());
      else
        return e;
    }
  }
  ExprPtr unary() {
    if (eat('-')) return node(Expr::Kind::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  ExprPtr power() {
    auto base = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->lhs = base;
      e->exponent = std::stol(std::string(s_.substr(start, pos_ - start)));
      if (neg) e->exponent = -e->exponent;
      return e;
    }
    return base;
  }
  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = Integer(std::string(s_.substr(start, pos_ - start)));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = std::string(s_.substr(start, pos_ - start));
      return e;
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace thue::ff
