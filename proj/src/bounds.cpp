#include "faultline/bounds.hpp"

#include "faultline/transform.hpp"

namespace faultline {

namespace {

struct Access {
  ExprId subscript = kNoId;  // in the source program
  int32_t array_len = 0;
  bool through_pointer = false;
  bool is_read = false;
};

int32_t place_array_len(const Program& p, const Function& fn, const Place& pl) {
  switch (pl.base) {
    case Place::Base::Local:
      return fn.locals[size_t(pl.index)].type.array_len;
    case Place::Base::Param: {
      const ParamType& pt = fn.params[size_t(pl.index)].type;
      if (pt.kind == ParamType::Kind::ArrayPtr) return pt.array_len;
      const RecordType& rec = p.records[size_t(pt.record)];
      return rec.fields[size_t(pl.field)].type.array_len;
    }
    case Place::Base::Global: {
      const DataType& dt = p.globals[size_t(pl.index)].type;
      if (dt.kind == DataType::Kind::Record) {
        const RecordType& rec = p.records[size_t(dt.record)];
        return rec.fields[size_t(pl.field)].type.array_len;
      }
      return dt.array_len;
    }
  }
  return 0;
}

class BoundsGen : public Rebuilder {
 public:
  using Rebuilder::Rebuilder;

 protected:
  void collect_place(const Place& pl, bool is_read, std::vector<Access>& out) {
    if (pl.subscript != kNoId) collect_expr(pl.subscript, out);
    Access a;
    a.is_read = is_read;
    a.through_pointer = pl.base == Place::Base::Param;
    if (pl.subscript != kNoId) {
      a.subscript = pl.subscript;
      a.array_len = place_array_len(src, src.functions[size_t(current_function)], pl);
      out.push_back(a);
    } else if (a.through_pointer && is_read) {
      out.push_back(a);  // plain field read through a pointer
    }
  }

  void collect_expr(ExprId id, std::vector<Access>& out) {
    const Expr& e = src.expr(id);
    switch (e.kind) {
      case ExprKind::IntLit:
        break;
      case ExprKind::Load:
        collect_place(e.place, /*is_read=*/true, out);
        break;
      case ExprKind::Unary:
        collect_expr(e.a, out);
        break;
      case ExprKind::Binary:
        collect_expr(e.a, out);
        collect_expr(e.b, out);
        break;
      case ExprKind::FaultXor:
        collect_expr(e.a, out);
        break;
    }
  }

  ExprId bound_condition(const Access& a, SourceLoc loc) {
    if (a.subscript == kNoId) {
      Expr one;
      one.kind = ExprKind::IntLit;
      one.literal = 1;
      one.ty = ScalarTy::I32;
      one.loc = loc;
      return dst.add_expr(one);
    }
    ScalarTy idx_ty = src.expr(a.subscript).ty;
    auto lit = [&](uint32_t v) {
      Expr l;
      l.kind = ExprKind::IntLit;
      l.literal = v;
      l.ty = ScalarTy::I32;
      l.loc = loc;
      return dst.add_expr(l);
    };
    auto cmp = [&](BinOp op, ExprId x, ExprId y) {
      Expr c;
      c.kind = ExprKind::Binary;
      c.bin_op = op;
      c.a = x;
      c.b = y;
      c.ty = ScalarTy::U8;
      c.loc = loc;
      return dst.add_expr(c);
    };
    ExprId upper = cmp(BinOp::Lt, clone_expr(a.subscript), lit(uint32_t(a.array_len)));
    if (!is_signed(idx_ty)) return upper;
    ExprId lower = cmp(BinOp::Le, lit(0), clone_expr(a.subscript));
    Expr both;
    both.kind = ExprKind::Binary;
    both.bin_op = BinOp::LogAnd;
    both.a = lower;
    both.b = upper;
    both.ty = ScalarTy::U8;
    both.loc = loc;
    return dst.add_expr(both);
  }

  void add_assert(AssertOrigin origin, ExprId cond, SourceLoc loc,
                  std::vector<StmtId>& out) {
    // idempotence: skip if an identical assertion already directly precedes
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      const Stmt& prev = dst.stmt(*it);
      if (prev.kind != StmtKind::Assert) break;
      const AssertionRef& ref = dst.assertions[size_t(prev.assertion)];
      if (ref.origin == origin && expr_equal(dst, prev.expr, cond)) return;
    }
    Stmt s;
    s.kind = StmtKind::Assert;
    s.expr = cond;
    s.loc = loc;
    AssertionRef ref;
    ref.id = int32_t(dst.assertions.size());
    ref.origin = origin;
    ref.loc = loc;
    s.assertion = ref.id;
    StmtId sid = dst.add_stmt(s);
    ref.stmt = sid;
    dst.assertions.push_back(ref);
    out.push_back(sid);
  }

  void emit_stmt(StmtId id, std::vector<StmtId>& out) override {
    const Stmt& s = src.stmt(id);
    std::vector<Access> accesses;
    switch (s.kind) {
      case StmtKind::Assign:
        if (!s.is_sym_input) collect_expr(s.expr, accesses);
        collect_place(s.place, /*is_read=*/false, accesses);
        break;
      case StmtKind::Call:
        for (const CallArg& a : s.args)
          if (!a.is_ref) collect_expr(a.expr, accesses);
        if (s.has_place) collect_place(s.place, /*is_read=*/false, accesses);
        break;
      case StmtKind::If:
      case StmtKind::While:
        collect_expr(s.expr, accesses);
        break;
      case StmtKind::Return:
        if (s.expr != kNoId) collect_expr(s.expr, accesses);
        break;
      default:
        break;  // assertions are property expressions; no annotation
    }
    for (const Access& a : accesses) {
      if (a.subscript != kNoId)
        add_assert(AssertOrigin::IndexBound, bound_condition(a, s.loc), s.loc, out);
      if (a.through_pointer && a.is_read)
        add_assert(AssertOrigin::ReadValid, bound_condition(a, s.loc), s.loc, out);
    }
    Rebuilder::emit_stmt(id, out);
  }
};

}  // namespace

Program generate_bound_assertions(const Program& p) {
  BoundsGen gen(p);
  return gen.run();
}

}  // namespace faultline
