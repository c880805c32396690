#pragma once

#include <string>
#include <vector>

#include "faultline/source.hpp"

namespace faultline {

enum class Tok : uint8_t {
  Ident, Int,
  KwRecord, KwVoid, KwIf, KwElse, KwWhile, KwFor, KwBreak, KwGoto, KwReturn,
  LBrace, RBrace, LParen, RParen, LBracket, RBracket,
  Semi, Comma, Colon,
  Assign,
  Plus, Minus, Star, Slash, Percent,
  Amp, Pipe, Caret, Shl, Shr,
  Eq, Ne, Lt, Le, Gt, Ge,
  AndAnd, OrOr, Not,
  Arrow, Dot,
  Annot,  // start of a `//@` annotation comment
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  uint32_t value = 0;  // Int
  SourceLoc loc;
};

// Tokenize FIC source. `//@` comments are surfaced as an Annot token followed
// by the annotation's own tokens; other comments are skipped.
std::vector<Token> lex(const std::string& text);

}  // namespace faultline
