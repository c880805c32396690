#pragma once

#include <string>
#include <vector>

#include "faultline/ast.hpp"

namespace faultline {

// Declaration header line for one fault variable in an instrumented listing.
struct FaultDeclLine {
  std::string name;
  ScalarTy type = ScalarTy::U32;
  bool symbolic = true;
  uint32_t fixed_value = 0;
};

// Render a program back to FIC source in canonical form. For programs without
// instrumentation, parse(render(p)) is structurally equal to p. Instrumented
// programs render their fault XORs as `(expr) ^ fault_N` with an extern-style
// declaration header; such listings are for inspection.
std::string pretty_print(const Program& p);
std::string pretty_print(const Program& p,
                         const std::vector<FaultDeclLine>& fault_decls);

}  // namespace faultline
