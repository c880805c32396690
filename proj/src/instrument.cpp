#include "faultline/instrument.hpp"

#include "faultline/transform.hpp"

namespace faultline {

const char* fault_model_name(FaultModel m) {
  switch (m) {
    case FaultModel::Data: return "data";
    case FaultModel::TestInversion: return "test-inversion";
    case FaultModel::Both: return "both";
  }
  return "both";
}

bool fault_model_from_name(const std::string& s, FaultModel& out) {
  if (s == "data") { out = FaultModel::Data; return true; }
  if (s == "test-inversion") { out = FaultModel::TestInversion; return true; }
  if (s == "both") { out = FaultModel::Both; return true; }
  return false;
}

const FaultSite* FaultRegistry::site_by_name(const std::string& name) const {
  for (const FaultSite& s : sites)
    if (s.var_name == name) return &s;
  return nullptr;
}

FaultConfig FaultConfig::all_symbolic(const FaultRegistry& r) {
  FaultConfig cfg;
  cfg.model = r.model;
  for (const FaultSite& s : r.sites) cfg.sites[s.id] = FaultValue{true, 0};
  return cfg;
}

namespace {

bool model_wants(FaultModel model, SiteKind kind) {
  if (model == FaultModel::TestInversion) return kind == SiteKind::TestCondition;
  if (model == FaultModel::Data) return true;  // conditions are data too
  return true;
}

void walk_faultable(const Program& p, FaultModel model, int function,
                    const std::vector<StmtId>& block,
                    std::vector<FaultablePoint>& out) {
  for (StmtId id : block) {
    const Stmt& s = p.stmt(id);
    auto add = [&](SiteRole role, int arg, ExprId e, SiteKind kind) {
      if (!model_wants(model, kind)) return;
      FaultablePoint pt;
      pt.stmt = id;
      pt.role = role;
      pt.arg_index = arg;
      pt.expr = e;
      pt.kind = kind;
      pt.function = function;
      out.push_back(pt);
    };
    switch (s.kind) {
      case StmtKind::Assign:
        if (!s.is_sym_input) add(SiteRole::Rhs, kNoId, s.expr, SiteKind::Data);
        break;
      case StmtKind::Call:
        for (size_t a = 0; a < s.args.size(); ++a)
          if (!s.args[a].is_ref)
            add(SiteRole::Arg, int32_t(a), s.args[a].expr, SiteKind::Data);
        break;
      case StmtKind::If:
      case StmtKind::While:
        add(SiteRole::Condition, kNoId, s.expr, SiteKind::TestCondition);
        walk_faultable(p, model, function, s.then_block, out);
        if (s.kind == StmtKind::If)
          walk_faultable(p, model, function, s.else_block, out);
        break;
      case StmtKind::Return:
        if (s.expr != kNoId) add(SiteRole::Ret, kNoId, s.expr, SiteKind::Data);
        break;
      default:
        break;  // asserts, counters, gotos: not faultable
    }
  }
}

// An expression already confined to {0,1}: comparisons, logical ops, !, and
// the literal truth values. The parser normalizes branch conditions to this
// form, so instrumentation rarely needs the != 0 fallback.
bool boolean_valued(const Program& p, ExprId id) {
  const Expr& e = p.expr(id);
  if (e.kind == ExprKind::Binary)
    return is_comparison(e.bin_op) || is_logical(e.bin_op);
  if (e.kind == ExprKind::Unary) return e.un_op == UnOp::LogNot;
  if (e.kind == ExprKind::IntLit) return e.literal <= 1;
  return false;
}

class Instrumenter : public Rebuilder {
 public:
  Instrumenter(const Program& p, FaultModel model)
      : Rebuilder(p), model_(model) {}

  FaultRegistry registry;

 protected:
  FaultModel model_;

  ExprId wrap(ExprId cloned, StmtId src_stmt, StmtId dst_stmt, SiteRole role,
              int arg, SiteKind kind) {
    (void)src_stmt;
    ExprId inner = cloned;
    ScalarTy ty = dst.expr(cloned).ty;
    if (kind == SiteKind::TestCondition) {
      if (!boolean_valued(dst, cloned)) {
        Expr ne;
        ne.kind = ExprKind::Binary;
        ne.bin_op = BinOp::Ne;
        ne.a = cloned;
        Expr zero;
        zero.kind = ExprKind::IntLit;
        zero.literal = 0;
        zero.ty = ScalarTy::I32;
        zero.loc = dst.expr(cloned).loc;
        ne.b = dst.add_expr(zero);
        ne.ty = ScalarTy::U8;
        ne.loc = dst.expr(cloned).loc;
        inner = dst.add_expr(ne);
      }
      ty = ScalarTy::U8;
    }
    int32_t id = int32_t(registry.sites.size());
    Expr fx;
    fx.kind = ExprKind::FaultXor;
    fx.a = inner;
    fx.ty = ty;
    fx.site = id;
    fx.loc = dst.expr(inner).loc;
    ExprId wrapped = dst.add_expr(fx);

    FaultSite site;
    site.id = id;
    site.var_name = "fault_" + std::to_string(id);
    site.counter_name = site.var_name + "_counter";
    site.kind = kind;
    site.expr_type = ty;
    site.stmt = dst_stmt;
    site.role = role;
    site.arg_index = arg;
    site.function = current_function;
    site.loc = dst.expr(inner).loc;
    registry.sites.push_back(site);
    return wrapped;
  }

  void emit_stmt(StmtId id, std::vector<StmtId>& out) override {
    const Stmt& s = src.stmt(id);
    if (s.kind == StmtKind::If || s.kind == StmtKind::While) {
      // The condition's site must be numbered before any site in the body,
      // so build this statement by hand instead of post-editing the clone.
      StmtId did = dst.add_stmt(Stmt{});
      ExprId cond = clone_expr(s.expr);
      if (model_wants(model_, SiteKind::TestCondition))
        cond = wrap(cond, id, did, SiteRole::Condition, kNoId,
                    SiteKind::TestCondition);
      std::vector<StmtId> then_b = clone_block(s.then_block);
      std::vector<StmtId> else_b;
      if (s.kind == StmtKind::If) else_b = clone_block(s.else_block);
      Stmt d = s;
      d.expr = cond;
      d.then_block = std::move(then_b);
      d.else_block = std::move(else_b);
      dst.stmt(did) = std::move(d);
      out.push_back(did);
      return;
    }
    Rebuilder::emit_stmt(id, out);
    StmtId did = out.back();
    switch (s.kind) {
      case StmtKind::Assign:
        if (!s.is_sym_input && model_wants(model_, SiteKind::Data)) {
          ExprId w = wrap(dst.stmt(did).expr, id, did, SiteRole::Rhs, kNoId,
                          SiteKind::Data);
          dst.stmt(did).expr = w;
        }
        break;
      case StmtKind::Call:
        if (model_wants(model_, SiteKind::Data))
          for (size_t a = 0; a < dst.stmt(did).args.size(); ++a)
            if (!dst.stmt(did).args[a].is_ref) {
              ExprId w = wrap(dst.stmt(did).args[a].expr, id, did,
                              SiteRole::Arg, int32_t(a), SiteKind::Data);
              dst.stmt(did).args[a].expr = w;
            }
        break;
      case StmtKind::Return:
        if (dst.stmt(did).expr != kNoId && model_wants(model_, SiteKind::Data)) {
          ExprId w = wrap(dst.stmt(did).expr, id, did, SiteRole::Ret, kNoId,
                          SiteKind::Data);
          dst.stmt(did).expr = w;
        }
        break;
      default:
        break;
    }
  }
};

}  // namespace

std::vector<FaultablePoint> enumerate_faultable(const Program& p,
                                                FaultModel model) {
  std::vector<FaultablePoint> out;
  for (size_t f = 0; f < p.functions.size(); ++f)
    walk_faultable(p, model, int(f), p.functions[f].body, out);
  return out;
}

FaultRegistry instrument(const Program& p, FaultModel model) {
  Instrumenter ins(p, model);
  Program out = ins.run();
  FaultRegistry reg = std::move(ins.registry);
  reg.model = model;
  reg.program = std::move(out);
  return reg;
}

}  // namespace faultline
