#pragma once

#include <map>
#include <set>
#include <vector>

#include "faultline/ast.hpp"

namespace faultline {

enum class TermKind : uint8_t {
  Jump,    // one successor
  Branch,  // cond; successors [true, false]
  Return,  // jumps to exit
  Halt,    // countermeasure; jumps to exit
  None,    // exit block
};

enum class EdgeLabel : uint8_t { Fall, True, False };

struct Block {
  std::vector<StmtId> stmts;       // simple statements in order
  TermKind term = TermKind::Jump;
  ExprId cond = kNoId;             // Branch condition
  StmtId term_stmt = kNoId;        // If/While/Return/Countermeasure statement
  ExprId ret = kNoId;              // Return value
  std::vector<int> succs;
  std::vector<EdgeLabel> labels;
};

struct Cfg {
  int function = -1;
  std::vector<Block> blocks;
  int entry = 0;
  int exit = 0;
  std::vector<int> idom;      // immediate dominator, -1 when undefined
  std::vector<int> ipostdom;  // immediate postdominator, -1 when undefined
  std::vector<int> rpo;       // reachable blocks in reverse postorder
  std::set<int> loop_headers;
  std::map<StmtId, int> block_of_stmt;  // includes branch/return statements

  std::vector<std::vector<int>> preds() const;
  bool reachable(int block) const;
};

// Lower a type-checked function to a CFG with dominator and postdominator
// trees. Total on typed functions.
Cfg build_cfg(const Program& p, int function);

}  // namespace faultline
