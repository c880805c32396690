#include "faultline/pretty.hpp"

#include <set>
#include <sstream>

namespace faultline {

namespace {

struct Printer {
  const Program& p;
  std::ostringstream out;
  int indent = 0;

  void line(const std::string& s) {
    for (int k = 0; k < indent; ++k) out << "    ";
    out << s << "\n";
  }

  std::string type_text(const DataType& dt, const std::string& name) const {
    std::string t = scalar_name(dt.scalar);
    if (dt.kind == DataType::Kind::Record) t = p.records[size_t(dt.record)].name;
    std::string s = t + " " + name;
    if (dt.kind == DataType::Kind::Array)
      s += "[" + std::to_string(dt.array_len) + "]";
    return s;
  }

  std::string base_name(const Place& pl, const Function& fn) const {
    switch (pl.base) {
      case Place::Base::Global: return p.globals[size_t(pl.index)].name;
      case Place::Base::Local: return fn.locals[size_t(pl.index)].name;
      case Place::Base::Param: return fn.params[size_t(pl.index)].name;
    }
    return "?";
  }

  std::string place_text(const Place& pl, const Function& fn) const {
    std::string s = base_name(pl, fn);
    if (pl.field != kNoId) {
      const char* sep = pl.base == Place::Base::Param ? "->" : ".";
      int rec = kNoId;
      if (pl.base == Place::Base::Param)
        rec = fn.params[size_t(pl.index)].type.record;
      else
        rec = p.globals[size_t(pl.index)].type.record;
      s += sep;
      s += p.records[size_t(rec)].fields[size_t(pl.field)].name;
    }
    if (pl.subscript != kNoId)
      s += "[" + expr_text(pl.subscript, fn, 0) + "]";
    return s;
  }

  static int binop_prec(BinOp op) {
    switch (op) {
      case BinOp::Mul: case BinOp::Div: case BinOp::Rem: return 10;
      case BinOp::Add: case BinOp::Sub: return 9;
      case BinOp::Shl: case BinOp::Shr: return 8;
      case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 7;
      case BinOp::Eq: case BinOp::Ne: return 6;
      case BinOp::BitAnd: return 5;
      case BinOp::BitXor: return 4;
      case BinOp::BitOr: return 3;
      case BinOp::LogAnd: return 2;
      case BinOp::LogOr: return 1;
    }
    return 0;
  }

  std::string expr_text(ExprId id, const Function& fn, int parent_prec) const {
    const Expr& e = p.expr(id);
    switch (e.kind) {
      case ExprKind::IntLit:
        return std::to_string(e.literal);
      case ExprKind::Load:
        return place_text(e.place, fn);
      case ExprKind::Unary: {
        std::string s = std::string(unop_text(e.un_op)) + expr_text(e.a, fn, 11);
        return s;
      }
      case ExprKind::Binary: {
        int prec = binop_prec(e.bin_op);
        std::string s = expr_text(e.a, fn, prec) + " " + binop_text(e.bin_op) +
                        " " + expr_text(e.b, fn, prec + 1);
        if (prec < parent_prec) return "(" + s + ")";
        return s;
      }
      case ExprKind::FaultXor: {
        const Expr& inner = p.expr(e.a);
        std::string in = expr_text(e.a, fn, 0);
        if (inner.kind != ExprKind::IntLit && inner.kind != ExprKind::Load)
          in = "(" + in + ")";
        std::string s = in + " ^ fault_" + std::to_string(e.site);
        if (parent_prec > 4) return "(" + s + ")";
        return s;
      }
    }
    return "?";
  }

  void print_block(const std::vector<StmtId>& block, const Function& fn) {
    for (StmtId id : block) print_stmt(id, fn);
  }

  void print_stmt(StmtId id, const Function& fn) {
    const Stmt& s = p.stmt(id);
    switch (s.kind) {
      case StmtKind::Assign:
        if (s.is_sym_input) {
          line(place_text(s.place, fn) + " = __sym_input_" +
               scalar_name(s.sym_input_ty) + "(" + s.sym_input_name + ");");
        } else {
          line(place_text(s.place, fn) + " = " + expr_text(s.expr, fn, 0) + ";");
        }
        break;
      case StmtKind::Call: {
        std::string call;
        if (s.has_place) call += place_text(s.place, fn) + " = ";
        call += p.functions[size_t(s.callee)].name + "(";
        const Function& callee = p.functions[size_t(s.callee)];
        for (size_t a = 0; a < s.args.size(); ++a) {
          if (a) call += ", ";
          if (s.args[a].is_ref) {
            bool record_ptr =
                callee.params[a].type.kind == ParamType::Kind::RecordPtr &&
                s.args[a].ref.base == Place::Base::Global;
            call += (record_ptr ? "&" : "") + base_name(s.args[a].ref, fn);
          } else {
            call += expr_text(s.args[a].expr, fn, 0);
          }
        }
        call += ");";
        line(call);
        break;
      }
      case StmtKind::If:
        line("if (" + expr_text(s.expr, fn, 0) + ") {");
        ++indent;
        print_block(s.then_block, fn);
        --indent;
        if (!s.else_block.empty()) {
          line("} else {");
          ++indent;
          print_block(s.else_block, fn);
          --indent;
        }
        line("}");
        break;
      case StmtKind::While:
        line("while (" + expr_text(s.expr, fn, 0) + ") {");
        ++indent;
        print_block(s.then_block, fn);
        --indent;
        line("}");
        break;
      case StmtKind::Break:
        line("break;");
        break;
      case StmtKind::Goto:
        line("goto " + s.label + ";");
        break;
      case StmtKind::Label: {
        int saved = indent;
        indent = saved > 0 ? saved - 1 : 0;
        line(s.label + ":");
        indent = saved;
        break;
      }
      case StmtKind::Return:
        if (s.expr != kNoId)
          line("return " + expr_text(s.expr, fn, 0) + ";");
        else
          line("return;");
        break;
      case StmtKind::Assert: {
        const AssertionRef& ref = p.assertions[size_t(s.assertion)];
        if (ref.origin == AssertOrigin::User)
          line("//@ assert " + expr_text(s.expr, fn, 0) + ";");
        else
          line("/*@ assert " + std::string(assert_origin_name(ref.origin)) +
               ": " + expr_text(s.expr, fn, 0) + "; */");
        break;
      }
      case StmtKind::Countermeasure:
        line("__countermeasure();");
        break;
      case StmtKind::CounterInc:
        line("fault_" + std::to_string(s.site) + "_counter = fault_" +
             std::to_string(s.site) + "_counter + 1;");
        break;
    }
  }

  void print_function(const Function& fn) {
    std::string sig = fn.result ? scalar_name(*fn.result) : "void";
    sig += " " + fn.name + "(";
    for (size_t a = 0; a < fn.params.size(); ++a) {
      if (a) sig += ", ";
      const ParamType& pt = fn.params[a].type;
      switch (pt.kind) {
        case ParamType::Kind::Scalar:
          sig += std::string(scalar_name(pt.scalar)) + " " + fn.params[a].name;
          break;
        case ParamType::Kind::RecordPtr:
          sig += p.records[size_t(pt.record)].name + " *" + fn.params[a].name;
          break;
        case ParamType::Kind::ArrayPtr:
          sig += std::string(scalar_name(pt.scalar)) + " " + fn.params[a].name +
                 "[" + std::to_string(pt.array_len) + "]";
          break;
      }
    }
    sig += ") {";
    line(sig);
    ++indent;
    for (const LocalDecl& d : fn.locals) line(type_text(d.type, d.name) + ";");
    print_block(fn.body, fn);
    --indent;
    line("}");
  }
};

}  // namespace

std::string pretty_print(const Program& p,
                         const std::vector<FaultDeclLine>& fault_decls) {
  Printer pr{p};
  // Declaration header in descending id order, symbolic sites as externs.
  for (auto it = fault_decls.rbegin(); it != fault_decls.rend(); ++it) {
    if (it->symbolic)
      pr.line("extern " + std::string(scalar_name(it->type)) + " " + it->name +
              ";");
    else
      pr.line(std::string(scalar_name(it->type)) + " " + it->name + " = " +
              std::to_string(it->fixed_value) + ";");
  }
  if (!fault_decls.empty()) pr.out << "\n";
  for (const RecordType& rec : p.records) {
    pr.line("record " + rec.name + " {");
    ++pr.indent;
    for (const RecordField& f : rec.fields) pr.line(pr.type_text(f.type, f.name) + ";");
    --pr.indent;
    pr.line("}");
    pr.out << "\n";
  }
  for (const GlobalDecl& g : p.globals) pr.line(pr.type_text(g.type, g.name) + ";");
  if (!p.globals.empty()) pr.out << "\n";
  for (size_t f = 0; f < p.functions.size(); ++f) {
    pr.print_function(p.functions[f]);
    if (f + 1 < p.functions.size()) pr.out << "\n";
  }
  return pr.out.str();
}

std::string pretty_print(const Program& p) {
  // Collect fault declarations from the instrumentation present in the tree.
  std::set<std::pair<int32_t, ScalarTy>> sites;
  for (const Expr& e : p.exprs)
    if (e.kind == ExprKind::FaultXor) sites.insert({e.site, e.ty});
  std::vector<FaultDeclLine> decls;
  for (const auto& [site, ty] : sites) {
    FaultDeclLine d;
    d.name = "fault_" + std::to_string(site);
    d.type = ty;
    d.symbolic = true;
    decls.push_back(d);
  }
  return pretty_print(p, decls);
}

}  // namespace faultline
