// Recursive-descent LTLf parser.
//
// Precedence, loosest first:  U R  <  -> <-> xor  <  |  <  &  <  unary.
// U, R and the implication level associate to the right; & and | to the left.

#include <cctype>

#include "posynt/error.hpp"
#include "posynt/logic.hpp"

namespace posynt {

namespace {

enum class Tok {
  end,
  lparen,
  rparen,
  ident,
  tt,
  ff,
  not_,
  and_,
  or_,
  implies,
  equiv,
  xor_,
  next,
  strong_next,
  finally,
  globally,
  until,
  release,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= s_.size()) return {Tok::end, start, {}};
    char c = s_[pos_];
    auto take = [&](std::size_t n, Tok k) {
      pos_ += n;
      return Token{k, start, std::string(s_.substr(start, n))};
    };
    auto starts = [&](std::string_view p) { return s_.substr(pos_, p.size()) == p; };
    if (c == '(') return take(1, Tok::lparen);
    if (c == ')') return take(1, Tok::rparen);
    if (starts("<->")) return take(3, Tok::equiv);
    if (starts("<=>")) return take(3, Tok::equiv);
    if (starts("->")) return take(2, Tok::implies);
    if (starts("=>")) return take(2, Tok::implies);
    if (starts("&&")) return take(2, Tok::and_);
    if (starts("||")) return take(2, Tok::or_);
    if (starts("/\\")) return take(2, Tok::and_);
    if (starts("\\/")) return take(2, Tok::or_);
    if (c == '&') return take(1, Tok::and_);
    if (c == '|') return take(1, Tok::or_);
    if (c == '!' || c == '~') return take(1, Tok::not_);
    if (c == '^') return take(1, Tok::xor_);
    if (c == '1') return take(1, Tok::tt);
    if (c == '0') return take(1, Tok::ff);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) ||
                                 s_[end] == '_'))
        ++end;
      std::string_view word = s_.substr(pos_, end - pos_);
      if (word == "X" && s_.substr(end, 3) == "[!]") return take(end - pos_ + 3, Tok::strong_next);
      if (word == "X" && s_.substr(end, 3) == "[.]") return take(end - pos_ + 3, Tok::next);
      Tok kind = Tok::ident;
      if (word == "tt" || word == "true" || word == "TRUE") kind = Tok::tt;
      else if (word == "ff" || word == "false" || word == "FALSE") kind = Tok::ff;
      else if (word == "X" || word == "WX") kind = Tok::next;
      else if (word == "N") kind = Tok::strong_next;
      else if (word == "F") kind = Tok::finally;
      else if (word == "G") kind = Tok::globally;
      else if (word == "U") kind = Tok::until;
      else if (word == "R") kind = Tok::release;
      else if (word == "xor") kind = Tok::xor_;
      return take(end - pos_, kind);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, FormulaStore& store) : lex_(text), store_(store) {
    cur_ = lex_.next();
  }

  Formula parse() {
    Formula f = temporal_binary();
    if (cur_.kind != Tok::end) throw ParseError("unexpected '" + cur_.text + "'", cur_.offset);
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  Formula temporal_binary() {
    Formula lhs = implication();
    if (cur_.kind == Tok::until || cur_.kind == Tok::release) {
      Op op = cur_.kind == Tok::until ? Op::until : Op::release;
      advance();
      Formula rhs = temporal_binary();
      return store_.make_binary(op, lhs, rhs);
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    Op op;
    switch (cur_.kind) {
      case Tok::implies: op = Op::implies; break;
      case Tok::equiv: op = Op::equiv; break;
      case Tok::xor_: op = Op::xor_; break;
      default: return lhs;
    }
    advance();
    Formula rhs = implication();
    return store_.make_binary(op, lhs, rhs);
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (cur_.kind == Tok::or_) {
      advance();
      lhs = store_.make_binary(Op::or_, lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (cur_.kind == Tok::and_) {
      advance();
      lhs = store_.make_binary(Op::and_, lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::not_: advance(); return store_.make_not(unary());
      case Tok::next: advance(); return store_.make_unary(Op::next, unary());
      case Tok::strong_next: advance(); return store_.make_unary(Op::strong_next, unary());
      case Tok::finally: advance(); return store_.make_unary(Op::finally, unary());
      case Tok::globally: advance(); return store_.make_unary(Op::globally, unary());
      case Tok::tt: advance(); return store_.tt();
      case Tok::ff: advance(); return store_.ff();
      case Tok::ident: {
        advance();
        auto p = store_.vocabulary().find(t.text);
        if (!p) throw UndeclaredAtomError(t.text);
        return store_.atom(*p);
      }
      case Tok::lparen: {
        advance();
        Formula f = temporal_binary();
        if (cur_.kind != Tok::rparen) throw ParseError("expected ')'", cur_.offset);
        advance();
        return f;
      }
      case Tok::end: throw ParseError("unexpected end of input", t.offset);
      default: throw ParseError("unexpected '" + t.text + "'", t.offset);
    }
  }

  Lexer lex_;
  FormulaStore& store_;
  Token cur_{Tok::end, 0, {}};
};

}  // namespace

Formula parse(std::string_view text, FormulaStore& store) { return Parser(text, store).parse(); }

}  // namespace posynt
