#pragma once

#include "faultline/ast.hpp"

namespace faultline {

// Base for program-to-program transformations. Clones the whole program;
// subclasses override the hooks to rewrite expressions or expand statements.
class Rebuilder {
 public:
  explicit Rebuilder(const Program& src);
  virtual ~Rebuilder() = default;

  Program run();

 protected:
  const Program& src;
  Program dst;
  int current_function = -1;

  ExprId clone_expr(ExprId id);
  Place clone_place(const Place& pl);
  std::vector<StmtId> clone_block(const std::vector<StmtId>& block);

  // Called for each expression after its children were cloned; `cloned` is
  // the freshly built node in dst. Returns the node to use.
  virtual ExprId rewrite_expr(ExprId src_id, ExprId cloned) {
    (void)src_id;
    return cloned;
  }

  // Called for each statement. The default clones statement `id` and appends
  // it to `out`; overrides may emit extra statements or replace it.
  virtual void emit_stmt(StmtId id, std::vector<StmtId>& out);

  // Clones statement `id` (with blocks and expressions) and returns its id
  // in dst. Assertion references are kept in sync.
  StmtId clone_stmt(StmtId id);
};

// Structural equality of two expressions within one program.
bool expr_equal(const Program& p, ExprId a, ExprId b);

}  // namespace faultline
