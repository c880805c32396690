#pragma once

#include <stdexcept>
#include <string>

namespace faultline {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

// A FIC compilation unit: the text plus the designated analysis entry
// function. An empty entry means "pick the default" (the single function,
// or `analysis_main` when present).
struct SourceUnit {
  std::string path;
  std::string text;
  std::string entry;
};

enum class ErrorKind {
  Lex,
  Parse,
  Type,
  UnsupportedConstruct,
  UnknownAssertion,
  MultiFaultContext,
  NonTerminating,
  FlagConflict,
  SchemaMismatch,
  ReplayMismatch,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, SourceLoc loc = {})
      : std::runtime_error(std::move(message)), kind(kind), loc(loc) {}
  ErrorKind kind;
  SourceLoc loc;
};

const char* error_kind_name(ErrorKind k);

}  // namespace faultline
