#include "pdl/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace pdl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column, std::string file)
    : std::runtime_error((file.empty() ? std::string() : file + ":") + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column),
      file_(std::move(file)) {}

namespace {

enum class Tok {
  Ident, Tilde, Amp, Bar, Arrow, Lt, Gt, LBracket, RBracket, LParen, RParen,
  Semi, Plus, Star, Question, Colon, Comma, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::Question: return "'?'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      tokens.push_back({Tok::Arrow, "->", l, col});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '~': kind = Tok::Tilde; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '<': kind = Tok::Lt; break;
      case '>': kind = Tok::Gt; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ';': kind = Tok::Semi; break;
      case '+': kind = Tok::Plus; break;
      case '*': kind = Tok::Star; break;
      case '?': kind = Tok::Question; break;
      case ':': kind = Tok::Colon; break;
      case ',': kind = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, col);
    }
    tokens.push_back({kind, std::string(1, c), l, col});
    advance(1);
  }
  tokens.push_back({Tok::End, "", line, column});
  return tokens;
}

// Recursive descent over a token vector. Inside programs a test "φ?" and a
// parenthesized program share a prefix, so program primaries first try a
// formula followed by "?" and backtrack on failure.
class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula formula() { return implication(); }

  Program program() { return union_program(); }

  Assertion assertion() {
    const Token name = expect(Tok::Ident);
    if (accept(Tok::Colon)) return Assertion::concept_of(name.text, formula());
    expect(Tok::LParen);
    const Token from = expect(Tok::Ident);
    expect(Tok::Comma);
    const Token to = expect(Tok::Ident);
    expect(Tok::RParen);
    return Assertion::role_of(name.text, from.text, to.text);
  }

  void finish() {
    if (peek().kind != Tok::End) fail(std::string("unexpected ") + describe(peek().kind));
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok kind) {
    if (peek().kind != kind)
      fail(std::string("expected ") + describe(kind) + ", found " + describe(peek().kind));
    return tokens_[pos_++];
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  Formula implication() {
    Formula left = disjunction();
    if (accept(Tok::Arrow)) return implies(left, implication());
    return left;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Bar)) f = disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return neg(unary());
    if (accept(Tok::Lt)) {
      Program p = program();
      expect(Tok::Gt);
      return diamond(p, unary());
    }
    if (accept(Tok::LBracket)) {
      Program p = program();
      expect(Tok::RBracket);
      return box(p, unary());
    }
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    const Token& t = expect(Tok::Ident);
    if (t.text == "true") return top();
    if (t.text == "false") return bottom();
    return prop(t.text);
  }

  Program union_program() {
    Program p = seq_program();
    while (accept(Tok::Plus)) p = choice(p, seq_program());
    return p;
  }

  Program seq_program() {
    Program p = postfix_program();
    while (accept(Tok::Semi)) p = seq(p, postfix_program());
    return p;
  }

  Program postfix_program() {
    Program p = primary_program();
    while (accept(Tok::Star)) p = star(p);
    return p;
  }

  Program primary_program() {
    const std::size_t start = pos_;
    try {
      Formula f = formula();
      if (accept(Tok::Question)) return test(f);
    } catch (const ParseError&) {
      // Not a test; fall through to the other alternatives.
    }
    pos_ = start;
    if (accept(Tok::LParen)) {
      Program p = program();
      expect(Tok::RParen);
      return p;
    }
    const Token& t = expect(Tok::Ident);
    if (t.text == "true" || t.text == "false") fail("'" + t.text + "' is not a program; did you mean '" + t.text + "?'");
    return atomic(t.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser parser(text);
  Formula f = parser.formula();
  parser.finish();
  return f;
}

Program parse_program(std::string_view text) {
  Parser parser(text);
  Program p = parser.program();
  parser.finish();
  return p;
}

Assertion parse_assertion(std::string_view text) {
  Parser parser(text);
  Assertion a = parser.assertion();
  parser.finish();
  return a;
}

}  // namespace pdl
