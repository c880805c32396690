#include "faultline/lexer.hpp"

#include <cctype>

namespace faultline {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < text.size() ? text[pos + ahead] : '\0';
  }
  char take() {
    char c = text[pos++];
    if (c == '\n') { ++line; col = 1; } else { ++col; }
    return c;
  }
  SourceLoc loc() const { return {line, col}; }
};

bool ident_start(char c) { return std::isalpha(uint8_t(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(uint8_t(c)) || c == '_'; }

Tok keyword(const std::string& s) {
  if (s == "record") return Tok::KwRecord;
  if (s == "void") return Tok::KwVoid;
  if (s == "if") return Tok::KwIf;
  if (s == "else") return Tok::KwElse;
  if (s == "while") return Tok::KwWhile;
  if (s == "for") return Tok::KwFor;
  if (s == "break") return Tok::KwBreak;
  if (s == "goto") return Tok::KwGoto;
  if (s == "return") return Tok::KwReturn;
  return Tok::Ident;
}

}  // namespace

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  Cursor c{text};
  auto push = [&](Tok k, SourceLoc loc, std::string s = {}, uint32_t v = 0) {
    out.push_back(Token{k, std::move(s), v, loc});
  };

  while (!c.done()) {
    char ch = c.peek();
    if (std::isspace(uint8_t(ch))) { c.take(); continue; }
    SourceLoc loc = c.loc();

    if (ch == '/' && c.peek(1) == '/') {
      if (c.peek(2) == '@') {
        c.take(); c.take(); c.take();
        push(Tok::Annot, loc);
        continue;  // annotation body is lexed normally
      }
      while (!c.done() && c.peek() != '\n') c.take();
      continue;
    }
    if (ch == '/' && c.peek(1) == '*') {
      c.take(); c.take();
      while (!c.done() && !(c.peek() == '*' && c.peek(1) == '/')) c.take();
      if (c.done()) throw Error(ErrorKind::Lex, "unterminated block comment", loc);
      c.take(); c.take();
      continue;
    }

    if (ident_start(ch)) {
      std::string s;
      while (!c.done() && ident_char(c.peek())) s += c.take();
      Tok k = keyword(s);
      push(k, loc, k == Tok::Ident ? s : std::string());
      continue;
    }

    if (std::isdigit(uint8_t(ch))) {
      uint64_t v = 0;
      if (ch == '0' && (c.peek(1) == 'x' || c.peek(1) == 'X')) {
        c.take(); c.take();
        if (!std::isxdigit(uint8_t(c.peek())))
          throw Error(ErrorKind::Lex, "malformed hex literal", loc);
        while (std::isxdigit(uint8_t(c.peek()))) {
          char d = c.take();
          v = v * 16 + uint64_t(std::isdigit(uint8_t(d)) ? d - '0'
                                                         : std::tolower(d) - 'a' + 10);
          if (v > 0xffffffffull)
            throw Error(ErrorKind::Lex, "integer literal does not fit 32 bits", loc);
        }
      } else {
        while (std::isdigit(uint8_t(c.peek()))) {
          v = v * 10 + uint64_t(c.take() - '0');
          if (v > 0xffffffffull)
            throw Error(ErrorKind::Lex, "integer literal does not fit 32 bits", loc);
        }
      }
      if (ident_start(c.peek()))
        throw Error(ErrorKind::Lex, "malformed integer literal", loc);
      push(Tok::Int, loc, {}, uint32_t(v));
      continue;
    }

    c.take();
    auto two = [&](char next, Tok yes, Tok no) {
      if (c.peek() == next) { c.take(); push(yes, loc); } else { push(no, loc); }
    };
    switch (ch) {
      case '{': push(Tok::LBrace, loc); break;
      case '}': push(Tok::RBrace, loc); break;
      case '(': push(Tok::LParen, loc); break;
      case ')': push(Tok::RParen, loc); break;
      case '[': push(Tok::LBracket, loc); break;
      case ']': push(Tok::RBracket, loc); break;
      case ';': push(Tok::Semi, loc); break;
      case ',': push(Tok::Comma, loc); break;
      case ':': push(Tok::Colon, loc); break;
      case '+': push(Tok::Plus, loc); break;
      case '*': push(Tok::Star, loc); break;
      case '/': push(Tok::Slash, loc); break;
      case '%': push(Tok::Percent, loc); break;
      case '^': push(Tok::Caret, loc); break;
      case '.': push(Tok::Dot, loc); break;
      case '-': two('>', Tok::Arrow, Tok::Minus); break;
      case '&': two('&', Tok::AndAnd, Tok::Amp); break;
      case '|': two('|', Tok::OrOr, Tok::Pipe); break;
      case '=': two('=', Tok::Eq, Tok::Assign); break;
      case '!': two('=', Tok::Ne, Tok::Not); break;
      case '<':
        if (c.peek() == '<') { c.take(); push(Tok::Shl, loc); }
        else two('=', Tok::Le, Tok::Lt);
        break;
      case '>':
        if (c.peek() == '>') { c.take(); push(Tok::Shr, loc); }
        else two('=', Tok::Ge, Tok::Gt);
        break;
      default:
        throw Error(ErrorKind::Lex, std::string("unexpected character '") + ch + "'", loc);
    }
  }
  push(Tok::End, c.loc());
  return out;
}

}  // namespace faultline
