#include "faultline/transform.hpp"

namespace faultline {

Rebuilder::Rebuilder(const Program& source) : src(source) {
  dst.records = src.records;
  dst.globals = src.globals;
  dst.assertions = src.assertions;
  dst.entry = src.entry;
}

Place Rebuilder::clone_place(const Place& pl) {
  Place out = pl;
  if (pl.subscript != kNoId) out.subscript = clone_expr(pl.subscript);
  return out;
}

ExprId Rebuilder::clone_expr(ExprId id) {
  const Expr& e = src.expr(id);
  Expr c = e;
  switch (e.kind) {
    case ExprKind::IntLit:
      break;
    case ExprKind::Load:
      c.place = clone_place(e.place);
      break;
    case ExprKind::Unary:
      c.a = clone_expr(e.a);
      break;
    case ExprKind::Binary:
      c.a = clone_expr(e.a);
      c.b = clone_expr(e.b);
      break;
    case ExprKind::FaultXor:
      c.a = clone_expr(e.a);
      break;
  }
  ExprId cloned = dst.add_expr(c);
  return rewrite_expr(id, cloned);
}

StmtId Rebuilder::clone_stmt(StmtId id) {
  const Stmt& s = src.stmt(id);
  Stmt c = s;
  c.then_block.clear();
  c.else_block.clear();
  if (s.kind == StmtKind::Assign) {
    c.place = clone_place(s.place);
    if (!s.is_sym_input) c.expr = clone_expr(s.expr);
  } else if (s.kind == StmtKind::Call) {
    if (s.has_place) c.place = clone_place(s.place);
    c.args.clear();
    for (const CallArg& a : s.args) {
      CallArg ca = a;
      if (!a.is_ref) ca.expr = clone_expr(a.expr);
      c.args.push_back(ca);
    }
  } else if (s.expr != kNoId) {
    c.expr = clone_expr(s.expr);
  }
  if (s.kind == StmtKind::If || s.kind == StmtKind::While) {
    c.then_block = clone_block(s.then_block);
    if (s.kind == StmtKind::If) c.else_block = clone_block(s.else_block);
  }
  StmtId out = dst.add_stmt(c);
  if (s.kind == StmtKind::Assert) dst.assertions[size_t(s.assertion)].stmt = out;
  return out;
}

void Rebuilder::emit_stmt(StmtId id, std::vector<StmtId>& out) {
  out.push_back(clone_stmt(id));
}

std::vector<StmtId> Rebuilder::clone_block(const std::vector<StmtId>& block) {
  std::vector<StmtId> out;
  for (StmtId id : block) emit_stmt(id, out);
  return out;
}

Program Rebuilder::run() {
  for (size_t f = 0; f < src.functions.size(); ++f) {
    current_function = int(f);
    Function fn = src.functions[f];
    fn.body.clear();
    dst.functions.push_back(std::move(fn));
    dst.functions.back().body = clone_block(src.functions[f].body);
  }
  current_function = -1;
  return std::move(dst);
}

bool expr_equal(const Program& p, ExprId ia, ExprId ib) {
  const Expr& a = p.expr(ia);
  const Expr& b = p.expr(ib);
  if (a.kind != b.kind || a.ty != b.ty) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
      return a.literal == b.literal;
    case ExprKind::Load: {
      if (a.place.base != b.place.base || a.place.index != b.place.index ||
          a.place.field != b.place.field)
        return false;
      if ((a.place.subscript == kNoId) != (b.place.subscript == kNoId))
        return false;
      return a.place.subscript == kNoId ||
             expr_equal(p, a.place.subscript, b.place.subscript);
    }
    case ExprKind::Unary:
      return a.un_op == b.un_op && expr_equal(p, a.a, b.a);
    case ExprKind::Binary:
      return a.bin_op == b.bin_op && expr_equal(p, a.a, b.a) &&
             expr_equal(p, a.b, b.b);
    case ExprKind::FaultXor:
      return a.site == b.site && expr_equal(p, a.a, b.a);
  }
  return false;
}

}  // namespace faultline
