#include "faultline/ast.hpp"

namespace faultline {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Lex: return "lex error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Type: return "type error";
    case ErrorKind::UnsupportedConstruct: return "unsupported construct";
    case ErrorKind::UnknownAssertion: return "unknown assertion";
    case ErrorKind::MultiFaultContext: return "multi-fault context";
    case ErrorKind::NonTerminating: return "non-terminating";
    case ErrorKind::FlagConflict: return "flag conflict";
    case ErrorKind::SchemaMismatch: return "schema mismatch";
    case ErrorKind::ReplayMismatch: return "replay mismatch";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

const char* assert_origin_name(AssertOrigin o) {
  switch (o) {
    case AssertOrigin::User: return "user";
    case AssertOrigin::IndexBound: return "index-bound";
    case AssertOrigin::ReadValid: return "read-valid";
  }
  return "user";
}

int RecordType::field_index(const std::string& n) const {
  for (size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == n) return int(i);
  return -1;
}

int Program::function_index(const std::string& name) const {
  for (size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return int(i);
  return -1;
}

int Program::record_index(const std::string& name) const {
  for (size_t i = 0; i < records.size(); ++i)
    if (records[i].name == name) return int(i);
  return -1;
}

int Program::global_index(const std::string& name) const {
  for (size_t i = 0; i < globals.size(); ++i)
    if (globals[i].name == name) return int(i);
  return -1;
}

void for_each_stmt(const Program& p, const std::vector<StmtId>& block,
                   const std::function<void(StmtId)>& fn) {
  for (StmtId id : block) {
    fn(id);
    const Stmt& s = p.stmt(id);
    if (!s.then_block.empty()) for_each_stmt(p, s.then_block, fn);
    if (!s.else_block.empty()) for_each_stmt(p, s.else_block, fn);
  }
}

namespace {

bool types_equal(const DataType& a, const DataType& b) {
  return a.kind == b.kind && a.scalar == b.scalar &&
         a.array_len == b.array_len && a.record == b.record;
}

bool params_equal(const ParamType& a, const ParamType& b) {
  return a.kind == b.kind && a.scalar == b.scalar && a.record == b.record &&
         a.array_len == b.array_len;
}

struct Cmp {
  const Program& pa;
  const Program& pb;

  bool place(const Place& a, const Place& b) const {
    if (a.base != b.base || a.index != b.index || a.field != b.field)
      return false;
    if ((a.subscript == kNoId) != (b.subscript == kNoId)) return false;
    if (a.subscript != kNoId && !expr(a.subscript, b.subscript)) return false;
    return true;
  }

  bool expr(ExprId ia, ExprId ib) const {
    const Expr& a = pa.expr(ia);
    const Expr& b = pb.expr(ib);
    if (a.kind != b.kind || a.ty != b.ty) return false;
    switch (a.kind) {
      case ExprKind::IntLit: return a.literal == b.literal;
      case ExprKind::Load: return place(a.place, b.place);
      case ExprKind::Unary: return a.un_op == b.un_op && expr(a.a, b.a);
      case ExprKind::Binary:
        return a.bin_op == b.bin_op && expr(a.a, b.a) && expr(a.b, b.b);
      case ExprKind::FaultXor: return a.site == b.site && expr(a.a, b.a);
    }
    return false;
  }

  bool block(const std::vector<StmtId>& a, const std::vector<StmtId>& b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!stmt(a[i], b[i])) return false;
    return true;
  }

  bool stmt(StmtId ia, StmtId ib) const {
    const Stmt& a = pa.stmt(ia);
    const Stmt& b = pb.stmt(ib);
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case StmtKind::Assign:
        if (a.is_sym_input != b.is_sym_input) return false;
        if (a.is_sym_input)
          return a.sym_input_name == b.sym_input_name &&
                 a.sym_input_ty == b.sym_input_ty && place(a.place, b.place);
        return place(a.place, b.place) && expr(a.expr, b.expr);
      case StmtKind::Call: {
        if (a.callee != b.callee || a.has_place != b.has_place) return false;
        if (a.has_place && !place(a.place, b.place)) return false;
        if (a.args.size() != b.args.size()) return false;
        for (size_t i = 0; i < a.args.size(); ++i) {
          const CallArg& x = a.args[i];
          const CallArg& y = b.args[i];
          if (x.is_ref != y.is_ref) return false;
          if (x.is_ref) {
            if (!place(x.ref, y.ref)) return false;
          } else if (!expr(x.expr, y.expr)) {
            return false;
          }
        }
        return true;
      }
      case StmtKind::If:
        return expr(a.expr, b.expr) && block(a.then_block, b.then_block) &&
               block(a.else_block, b.else_block);
      case StmtKind::While:
        return expr(a.expr, b.expr) && block(a.then_block, b.then_block);
      case StmtKind::Break: return true;
      case StmtKind::Goto:
      case StmtKind::Label: return a.label == b.label;
      case StmtKind::Return:
        if ((a.expr == kNoId) != (b.expr == kNoId)) return false;
        return a.expr == kNoId || expr(a.expr, b.expr);
      case StmtKind::Assert: {
        const AssertionRef& ra = pa.assertions[size_t(a.assertion)];
        const AssertionRef& rb = pb.assertions[size_t(b.assertion)];
        return ra.origin == rb.origin && expr(a.expr, b.expr);
      }
      case StmtKind::Countermeasure: return true;
      case StmtKind::CounterInc: return a.site == b.site;
    }
    return false;
  }
};

}  // namespace

bool structurally_equal(const Program& a, const Program& b) {
  if (a.records.size() != b.records.size()) return false;
  for (size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].name != b.records[i].name) return false;
    if (a.records[i].fields.size() != b.records[i].fields.size()) return false;
    for (size_t j = 0; j < a.records[i].fields.size(); ++j) {
      if (a.records[i].fields[j].name != b.records[i].fields[j].name ||
          !types_equal(a.records[i].fields[j].type, b.records[i].fields[j].type))
        return false;
    }
  }
  if (a.globals.size() != b.globals.size()) return false;
  for (size_t i = 0; i < a.globals.size(); ++i) {
    if (a.globals[i].name != b.globals[i].name ||
        !types_equal(a.globals[i].type, b.globals[i].type))
      return false;
  }
  if (a.functions.size() != b.functions.size()) return false;
  Cmp cmp{a, b};
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const Function& fa = a.functions[i];
    const Function& fb = b.functions[i];
    if (fa.name != fb.name || fa.result != fb.result) return false;
    if (fa.params.size() != fb.params.size()) return false;
    for (size_t j = 0; j < fa.params.size(); ++j) {
      if (fa.params[j].name != fb.params[j].name ||
          !params_equal(fa.params[j].type, fb.params[j].type))
        return false;
    }
    if (fa.locals.size() != fb.locals.size()) return false;
    for (size_t j = 0; j < fa.locals.size(); ++j) {
      if (fa.locals[j].name != fb.locals[j].name ||
          !types_equal(fa.locals[j].type, fb.locals[j].type))
        return false;
    }
    if (!cmp.block(fa.body, fb.body)) return false;
  }
  return a.entry == b.entry;
}

}  // namespace faultline
