#include "kp/parser.hpp"

#include <cctype>
#include <optional>

namespace kp {

namespace {

enum class Tok {
  Ident, Arrow, DArrow, And, Or, Not, Bot, LParen, RParen, LBrack, RBrack, Comma, Colon, Dot,
  Lambda, Bar, KwFst, KwSnd, KwInl, KwInr, KwInlFn, KwInrFn, KwCase, KwScase, KwOf, KwSsel,
  KwAbort, KwAssume, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::End, "", line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  bool sym(Token& t, std::string_view s, Tok k) {
    if (!starts(s)) return false;
    t.kind = k;
    t.text = std::string(s);
    advance(s.size());
    return true;
  }

  void lex_one(Token& t) {
    static constexpr std::pair<std::string_view, Tok> symbols[] = {
        {"_|_", Tok::Bot}, {"->", Tok::Arrow},  {"=>", Tok::DArrow}, {"/\\", Tok::And},
        {"\\/", Tok::Or},  {"\\", Tok::Lambda}, {"~", Tok::Not},     {"(", Tok::LParen},
        {")", Tok::RParen}, {"[", Tok::LBrack}, {"]", Tok::RBrack},  {",", Tok::Comma},
        {":", Tok::Colon}, {".", Tok::Dot},     {"|", Tok::Bar},
        {"→", Tok::Arrow}, {"⇒", Tok::DArrow}, {"∧", Tok::And},
        {"∨", Tok::Or},    {"¬", Tok::Not},    {"⊥", Tok::Bot},
        {"λ", Tok::Lambda},
    };
    for (const auto& [s, k] : symbols) {
      if (sym(t, s, k)) return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_' ||
              src_[end] == '\'')) {
        ++end;
      }
      std::string word(src_.substr(pos_, end - pos_));
      if ((word == "inl" || word == "inr") && src_.substr(end, 3) == "-fn") {
        word += "-fn";
        end += 3;
      }
      t.text = word;
      t.kind = keyword(word).value_or(Tok::Ident);
      advance(end - pos_);
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, col_);
  }

  static std::optional<Tok> keyword(const std::string& w) {
    static const std::pair<const char*, Tok> kws[] = {
        {"fst", Tok::KwFst},       {"snd", Tok::KwSnd},       {"inl", Tok::KwInl},
        {"inr", Tok::KwInr},       {"inl-fn", Tok::KwInlFn},  {"inr-fn", Tok::KwInrFn},
        {"case", Tok::KwCase},     {"scase", Tok::KwScase},   {"of", Tok::KwOf},
        {"ssel", Tok::KwSsel},     {"abort", Tok::KwAbort},   {"assume", Tok::KwAssume},
    };
    for (const auto& [s, k] : kws) {
      if (w == s) return k;
    }
    return std::nullopt;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Formula formula() { return imp(); }

  Term term() {
    switch (peek().kind) {
      case Tok::Lambda: {
        next();
        std::string x = ident();
        expect(Tok::Colon);
        Formula a = formula();
        expect(Tok::Dot);
        return tm::lam(x, a, term());
      }
      case Tok::KwCase: {
        next();
        Term s = term();
        expect(Tok::KwOf);
        expect(Tok::KwInl);
        auto [x, a] = binder();
        expect(Tok::DArrow);
        Term l = term();
        expect(Tok::Bar);
        expect(Tok::KwInr);
        auto [y, b] = binder();
        expect(Tok::DArrow);
        Term r = term();
        return tm::dcase(s, x, a, l, y, b, r);
      }
      case Tok::KwScase: {
        next();
        auto [z, c] = binder();
        expect(Tok::DArrow);
        Term major = term();
        expect(Tok::KwOf);
        expect(Tok::KwInlFn);
        auto [x, xa] = binder();
        expect(Tok::DArrow);
        Term l = term();
        expect(Tok::Bar);
        expect(Tok::KwInrFn);
        auto [y, ya] = binder();
        expect(Tok::DArrow);
        Term r = term();
        return tm::scase(z, c, major, x, xa, l, y, ya, r);
      }
      default: return application();
    }
  }

  Judgment judgment() {
    Judgment j;
    while (peek().kind == Tok::KwAssume) {
      next();
      std::string x = ident();
      expect(Tok::Colon);
      j.context.push(x, formula());
    }
    j.term = term();
    expect(Tok::Colon);
    j.formula = formula();
    return j;
  }

  std::vector<Formula> formula_list() {
    std::vector<Formula> out;
    if (peek().kind == Tok::End) return out;
    out.push_back(formula());
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(formula());
    }
    return out;
  }

  void finish() {
    if (peek().kind != Tok::End) fail("expected end of input, found " + describe(peek()));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  void expect(Tok k) {
    if (peek().kind != k) fail("expected " + spelling(k) + ", found " + describe(peek()));
    next();
  }

  static std::string spelling(Tok k) {
    switch (k) {
      case Tok::Colon: return "':'";
      case Tok::Dot: return "'.'";
      case Tok::DArrow: return "'=>'";
      case Tok::Bar: return "'|'";
      case Tok::RParen: return "')'";
      case Tok::RBrack: return "']'";
      case Tok::LBrack: return "'['";
      case Tok::KwOf: return "'of'";
      case Tok::KwInl: return "'inl'";
      case Tok::KwInr: return "'inr'";
      case Tok::KwInlFn: return "'inl-fn'";
      case Tok::KwInrFn: return "'inr-fn'";
      default: return "token";
    }
  }

  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier, found " + describe(peek()));
    return next().text;
  }

  std::pair<std::string, Formula> binder() {
    std::string x = ident();
    expect(Tok::Colon);
    return {x, formula()};
  }

  Formula bracketed() {
    expect(Tok::LBrack);
    Formula f = formula();
    expect(Tok::RBrack);
    return f;
  }

  // -- formulas

  Formula imp() {
    Formula lhs = disj();
    if (peek().kind == Tok::Arrow) {
      next();
      return fm::imp(lhs, imp());
    }
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (peek().kind == Tok::Or) {
      next();
      lhs = fm::disj(lhs, conj());
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = fm::conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: next(); return fm::neg(unary());
      case Tok::Bot: next(); return fm::falsum();
      case Tok::Ident: return fm::atom(next().text);
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      default: fail("expected formula, found " + describe(peek()));
    }
  }

  // -- terms

  bool atomic_start() const {
    auto k = peek().kind;
    return k == Tok::Ident || k == Tok::LParen;
  }

  Term application() {
    Term head = unit();
    while (atomic_start()) head = tm::ap(head, atomic());
    return head;
  }

  Term unit() {
    switch (peek().kind) {
      case Tok::KwFst: next(); return tm::fst(atomic());
      case Tok::KwSnd: next(); return tm::snd(atomic());
      case Tok::KwSsel: next(); return tm::ssel(atomic());
      case Tok::KwInl: {
        next();
        Formula other = bracketed();
        return tm::inl(atomic(), other);
      }
      case Tok::KwInr: {
        next();
        Formula other = bracketed();
        return tm::inr(atomic(), other);
      }
      case Tok::KwAbort: {
        next();
        Formula target = bracketed();
        return tm::abort_to(atomic(), target);
      }
      default: return atomic();
    }
  }

  Term atomic() {
    if (peek().kind == Tok::Ident) return tm::var(next().text);
    if (peek().kind != Tok::LParen) fail("expected term, found " + describe(peek()));
    next();
    Term first = term();
    if (peek().kind == Tok::Comma) {
      next();
      Term second = term();
      expect(Tok::RParen);
      return tm::pair(first, second);
    }
    expect(Tok::RParen);
    return first;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view src) {
  Parser p(src);
  Formula f = p.formula();
  p.finish();
  return f;
}

Term parse_term(std::string_view src) {
  Parser p(src);
  Term t = p.term();
  p.finish();
  return t;
}

Judgment parse_judgment(std::string_view src) {
  Parser p(src);
  Judgment j = p.judgment();
  p.finish();
  return j;
}

std::vector<Formula> parse_formula_list(std::string_view src) {
  Parser p(src);
  auto out = p.formula_list();
  p.finish();
  return out;
}

}  // namespace kp
