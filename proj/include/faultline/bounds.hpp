#pragma once

#include "faultline/ast.hpp"

namespace faultline {

// Insert runtime-check assertions in front of memory accesses:
//   - an index-bound assertion `0 <= i && i < len` (the lower half is dropped
//     for unsigned indexes) before every array subscript in program code;
//   - a read-validity assertion before every read through a pointer
//     parameter. Pointer parameters are always backed by an object, so the
//     condition reduces to the index bound of any subscript involved, or to a
//     trivially true condition for plain field reads.
// Reads inside assertion conditions are property expressions and are not
// annotated. The transformation is idempotent.
Program generate_bound_assertions(const Program& p);

}  // namespace faultline
