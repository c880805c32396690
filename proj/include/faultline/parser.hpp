#pragma once

#include "faultline/ast.hpp"
#include "faultline/source.hpp"

namespace faultline {

// Parse and type-check a FIC compilation unit into a resolved program.
// `//@ assert <expr>;` annotations and `__assert(<expr>);` statements both
// become user assertions. Throws Error on lexical, syntactic or type
// problems, with UnsupportedConstruct for pointer use outside the allowed
// parameter positions.
Program parse_unit(const SourceUnit& unit);

}  // namespace faultline
