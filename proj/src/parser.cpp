#include "faultline/parser.hpp"

#include <map>
#include <set>

#include "faultline/lexer.hpp"

namespace faultline {

namespace {

constexpr const char* kSymInputPrefix = "__sym_input_";

struct FnSig {
  std::string name;
  std::vector<Param> params;
  std::optional<ScalarTy> result;
  size_t body_tok = 0;  // index of the '{' token
  SourceLoc loc;
};

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;
  Program prog;
  std::vector<FnSig> sigs;

  // per-function parse state
  Function* fn = nullptr;
  std::map<std::string, int> local_index;
  std::map<std::string, int> param_index;
  std::set<std::string> labels;
  int loop_depth = 0;

  const Token& cur() const { return toks[i]; }
  const Token& ahead(size_t n) const {
    return toks[std::min(i + n, toks.size() - 1)];
  }
  SourceLoc loc() const { return cur().loc; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const char* s) const {
    return cur().kind == Tok::Ident && cur().text == s;
  }
  Token take() { return toks[i++]; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) throw Error(ErrorKind::Parse, std::string("expected ") + what, loc());
    return take();
  }
  [[noreturn]] void fail(const std::string& msg, ErrorKind k = ErrorKind::Parse) {
    throw Error(k, msg, loc());
  }

  // -------------------------------------------------------------------------
  // Declarations

  void scan_top_level() {
    while (!at(Tok::End)) {
      if (at(Tok::KwRecord)) { parse_record(); continue; }
      // type name (or void), then a name, then '(' for functions
      SourceLoc start = loc();
      bool is_void = at(Tok::KwVoid);
      std::string tyname;
      if (!is_void) {
        if (!at(Tok::Ident)) fail("expected declaration");
        tyname = take().text;
      } else {
        take();
      }
      if (!at(Tok::Ident)) fail("expected name in declaration");
      std::string name = take().text;
      if (at(Tok::LParen)) {
        scan_function_sig(is_void, tyname, name, start);
      } else {
        if (is_void) fail("void is only valid as a function result");
        parse_global(tyname, name, start);
      }
    }
  }

  void parse_record() {
    SourceLoc start = loc();
    take();  // record
    std::string name = expect(Tok::Ident, "record name").text;
    if (prog.record_index(name) >= 0)
      fail("duplicate record '" + name + "'", ErrorKind::Type);
    expect(Tok::LBrace, "'{'");
    RecordType rec;
    rec.name = name;
    while (!at(Tok::RBrace)) {
      std::string tyname = expect(Tok::Ident, "field type").text;
      ScalarTy st;
      if (!scalar_from_name(tyname, st))
        fail("unknown field type '" + tyname + "'", ErrorKind::Type);
      std::string fname = expect(Tok::Ident, "field name").text;
      if (rec.field_index(fname) >= 0)
        fail("duplicate field '" + fname + "'", ErrorKind::Type);
      DataType dt;
      dt.scalar = st;
      if (at(Tok::LBracket)) {
        take();
        Token len = expect(Tok::Int, "array length");
        if (len.value < 1) fail("array length must be >= 1", ErrorKind::Type);
        expect(Tok::RBracket, "']'");
        dt.kind = DataType::Kind::Array;
        dt.array_len = int32_t(len.value);
      }
      expect(Tok::Semi, "';'");
      rec.fields.push_back(RecordField{fname, dt});
    }
    take();  // }
    (void)start;
    prog.records.push_back(std::move(rec));
  }

  void parse_global(const std::string& tyname, const std::string& name,
                    SourceLoc start) {
    if (prog.global_index(name) >= 0)
      fail("duplicate global '" + name + "'", ErrorKind::Type);
    GlobalDecl g;
    g.name = name;
    ScalarTy st;
    if (scalar_from_name(tyname, st)) {
      g.type.scalar = st;
      if (at(Tok::LBracket)) {
        take();
        Token len = expect(Tok::Int, "array length");
        if (len.value < 1) fail("array length must be >= 1", ErrorKind::Type);
        expect(Tok::RBracket, "']'");
        g.type.kind = DataType::Kind::Array;
        g.type.array_len = int32_t(len.value);
      }
    } else {
      int rec = prog.record_index(tyname);
      if (rec < 0) fail("unknown type '" + tyname + "'", ErrorKind::Type);
      g.type.kind = DataType::Kind::Record;
      g.type.record = rec;
    }
    expect(Tok::Semi, "';'");
    (void)start;
    prog.globals.push_back(std::move(g));
  }

  Param parse_param() {
    std::string tyname = expect(Tok::Ident, "parameter type").text;
    Param p;
    ScalarTy st;
    if (scalar_from_name(tyname, st)) {
      p.name = expect(Tok::Ident, "parameter name").text;
      if (at(Tok::LBracket)) {
        take();
        Token len = expect(Tok::Int, "array length");
        if (len.value < 1) fail("array length must be >= 1", ErrorKind::Type);
        expect(Tok::RBracket, "']'");
        p.type.kind = ParamType::Kind::ArrayPtr;
        p.type.scalar = st;
        p.type.array_len = int32_t(len.value);
      } else {
        p.type.kind = ParamType::Kind::Scalar;
        p.type.scalar = st;
      }
      return p;
    }
    int rec = prog.record_index(tyname);
    if (rec < 0) fail("unknown parameter type '" + tyname + "'", ErrorKind::Type);
    expect(Tok::Star, "'*' (pointers to records only)");
    p.name = expect(Tok::Ident, "parameter name").text;
    p.type.kind = ParamType::Kind::RecordPtr;
    p.type.record = rec;
    return p;
  }

  void scan_function_sig(bool is_void, const std::string& tyname,
                         const std::string& name, SourceLoc start) {
    for (const FnSig& s : sigs)
      if (s.name == name) fail("duplicate function '" + name + "'", ErrorKind::Type);
    if (prog.global_index(name) >= 0)
      fail("function name collides with global '" + name + "'", ErrorKind::Type);
    FnSig sig;
    sig.name = name;
    sig.loc = start;
    if (!is_void) {
      ScalarTy st;
      if (!scalar_from_name(tyname, st))
        fail("function result must be a scalar type or void", ErrorKind::Type);
      sig.result = st;
    }
    take();  // (
    if (!at(Tok::RParen)) {
      sig.params.push_back(parse_param());
      while (at(Tok::Comma)) {
        take();
        sig.params.push_back(parse_param());
      }
    }
    expect(Tok::RParen, "')'");
    for (size_t a = 0; a < sig.params.size(); ++a)
      for (size_t b = a + 1; b < sig.params.size(); ++b)
        if (sig.params[a].name == sig.params[b].name)
          fail("duplicate parameter '" + sig.params[a].name + "'", ErrorKind::Type);
    if (!at(Tok::LBrace)) fail("expected function body");
    sig.body_tok = i;
    skip_block();
    sigs.push_back(std::move(sig));
  }

  void skip_block() {
    expect(Tok::LBrace, "'{'");
    int depth = 1;
    while (depth > 0) {
      if (at(Tok::End)) fail("unterminated function body");
      if (at(Tok::LBrace)) ++depth;
      if (at(Tok::RBrace)) --depth;
      take();
    }
  }

  // -------------------------------------------------------------------------
  // Name resolution helpers

  int find_sig(const std::string& name) const {
    for (size_t k = 0; k < sigs.size(); ++k)
      if (sigs[k].name == name) return int(k);
    return -1;
  }

  bool known_scalar_var(const std::string& name) const {
    auto li = local_index.find(name);
    if (li != local_index.end()) return true;
    auto pi = param_index.find(name);
    if (pi != param_index.end()) return true;
    return prog.global_index(name) >= 0;
  }

  // -------------------------------------------------------------------------
  // Expressions

  ScalarTy place_type(const Place& pl, SourceLoc at_loc) const {
    switch (pl.base) {
      case Place::Base::Local: {
        const DataType& dt = fn->locals[size_t(pl.index)].type;
        return dt.scalar;
      }
      case Place::Base::Param: {
        const ParamType& pt = fn->params[size_t(pl.index)].type;
        if (pt.kind == ParamType::Kind::Scalar) return pt.scalar;
        if (pt.kind == ParamType::Kind::ArrayPtr) return pt.scalar;
        // RecordPtr with field
        const RecordType& rec = prog.records[size_t(pt.record)];
        return rec.fields[size_t(pl.field)].type.scalar;
      }
      case Place::Base::Global: {
        const DataType& dt = prog.globals[size_t(pl.index)].type;
        if (dt.kind == DataType::Kind::Record) {
          const RecordType& rec = prog.records[size_t(dt.record)];
          return rec.fields[size_t(pl.field)].type.scalar;
        }
        return dt.scalar;
      }
    }
    throw Error(ErrorKind::Type, "unresolvable place", at_loc);
  }

  // Parses a place starting at an identifier token. Requires the result to be
  // a readable/writable scalar cell.
  Place parse_place() {
    std::string name = expect(Tok::Ident, "name").text;
    Place pl;
    bool is_record_ptr = false, is_array_ptr = false;
    bool is_record_global = false, is_array = false;

    if (auto it = local_index.find(name); it != local_index.end()) {
      pl.base = Place::Base::Local;
      pl.index = it->second;
      is_array = fn->locals[size_t(it->second)].type.kind == DataType::Kind::Array;
    } else if (auto it2 = param_index.find(name); it2 != param_index.end()) {
      pl.base = Place::Base::Param;
      pl.index = it2->second;
      const ParamType& pt = fn->params[size_t(it2->second)].type;
      is_record_ptr = pt.kind == ParamType::Kind::RecordPtr;
      is_array_ptr = pt.kind == ParamType::Kind::ArrayPtr;
    } else if (int g = prog.global_index(name); g >= 0) {
      pl.base = Place::Base::Global;
      pl.index = g;
      const DataType& dt = prog.globals[size_t(g)].type;
      is_record_global = dt.kind == DataType::Kind::Record;
      is_array = dt.kind == DataType::Kind::Array;
    } else {
      fail("unknown name '" + name + "'", ErrorKind::Type);
    }

    if (at(Tok::Arrow)) {
      if (!is_record_ptr)
        fail("'->' requires a record pointer parameter", ErrorKind::Type);
      take();
      std::string fname = expect(Tok::Ident, "field name").text;
      const ParamType& pt = fn->params[size_t(pl.index)].type;
      const RecordType& rec = prog.records[size_t(pt.record)];
      int f = rec.field_index(fname);
      if (f < 0) fail("no field '" + fname + "'", ErrorKind::Type);
      pl.field = f;
      if (rec.fields[size_t(f)].type.kind == DataType::Kind::Array) {
        expect(Tok::LBracket, "'[' (array field access)");
        pl.subscript = parse_expr();
        expect(Tok::RBracket, "']'");
      }
      return pl;
    }
    if (at(Tok::Dot)) {
      if (!is_record_global)
        fail("'.' requires a record variable", ErrorKind::Type);
      take();
      std::string fname = expect(Tok::Ident, "field name").text;
      const DataType& dt = prog.globals[size_t(pl.index)].type;
      const RecordType& rec = prog.records[size_t(dt.record)];
      int f = rec.field_index(fname);
      if (f < 0) fail("no field '" + fname + "'", ErrorKind::Type);
      pl.field = f;
      if (rec.fields[size_t(f)].type.kind == DataType::Kind::Array) {
        expect(Tok::LBracket, "'[' (array field access)");
        pl.subscript = parse_expr();
        expect(Tok::RBracket, "']'");
      }
      return pl;
    }
    if (at(Tok::LBracket)) {
      if (!is_array && !is_array_ptr)
        fail("subscript on non-array '" + name + "'", ErrorKind::Type);
      take();
      pl.subscript = parse_expr();
      expect(Tok::RBracket, "']'");
      return pl;
    }
    if (is_record_ptr || is_array_ptr)
      fail("pointer parameter '" + name + "' used as a value",
           ErrorKind::UnsupportedConstruct);
    if (is_record_global || is_array)
      fail("aggregate '" + name + "' used as a scalar", ErrorKind::Type);
    return pl;
  }

  ExprId make_load(Place pl, SourceLoc at_loc) {
    Expr e;
    e.kind = ExprKind::Load;
    e.place = pl;
    e.ty = place_type(pl, at_loc);
    e.loc = at_loc;
    return prog.add_expr(e);
  }

  ExprId parse_primary() {
    SourceLoc at_loc = loc();
    if (at(Tok::Int)) {
      Token t = take();
      Expr e;
      e.kind = ExprKind::IntLit;
      e.literal = t.value;
      e.ty = t.value <= 0x7fffffffu ? ScalarTy::I32 : ScalarTy::U32;
      e.loc = at_loc;
      return prog.add_expr(e);
    }
    if (at(Tok::LParen)) {
      take();
      ExprId e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Minus) || at(Tok::Not)) {
      UnOp op = at(Tok::Minus) ? UnOp::Neg : UnOp::LogNot;
      take();
      ExprId a = parse_primary();
      Expr e;
      e.kind = ExprKind::Unary;
      e.un_op = op;
      e.a = a;
      e.ty = op == UnOp::LogNot ? ScalarTy::U8 : prog.expr(a).ty;
      e.loc = at_loc;
      return prog.add_expr(e);
    }
    if (at(Tok::Amp))
      fail("'&' address-of is only valid as a call argument",
           ErrorKind::UnsupportedConstruct);
    if (at(Tok::Ident)) {
      const std::string& name = cur().text;
      if (ahead(1).kind == Tok::LParen && find_sig(name) >= 0)
        fail("calls cannot appear inside expressions");
      if (name.rfind(kSymInputPrefix, 0) == 0)
        fail("symbolic inputs are only valid as a whole right-hand side");
      Place pl = parse_place();
      return make_load(pl, at_loc);
    }
    fail("expected expression");
  }

  int precedence(Tok k) const {
    switch (k) {
      case Tok::Star: case Tok::Slash: case Tok::Percent: return 10;
      case Tok::Plus: case Tok::Minus: return 9;
      case Tok::Shl: case Tok::Shr: return 8;
      case Tok::Lt: case Tok::Le: case Tok::Gt: case Tok::Ge: return 7;
      case Tok::Eq: case Tok::Ne: return 6;
      case Tok::Amp: return 5;
      case Tok::Caret: return 4;
      case Tok::Pipe: return 3;
      case Tok::AndAnd: return 2;
      case Tok::OrOr: return 1;
      default: return 0;
    }
  }

  BinOp binop_of(Tok k) const {
    switch (k) {
      case Tok::Star: return BinOp::Mul;
      case Tok::Slash: return BinOp::Div;
      case Tok::Percent: return BinOp::Rem;
      case Tok::Plus: return BinOp::Add;
      case Tok::Minus: return BinOp::Sub;
      case Tok::Shl: return BinOp::Shl;
      case Tok::Shr: return BinOp::Shr;
      case Tok::Lt: return BinOp::Lt;
      case Tok::Le: return BinOp::Le;
      case Tok::Gt: return BinOp::Gt;
      case Tok::Ge: return BinOp::Ge;
      case Tok::Eq: return BinOp::Eq;
      case Tok::Ne: return BinOp::Ne;
      case Tok::Amp: return BinOp::BitAnd;
      case Tok::Caret: return BinOp::BitXor;
      case Tok::Pipe: return BinOp::BitOr;
      case Tok::AndAnd: return BinOp::LogAnd;
      default: return BinOp::LogOr;
    }
  }

  ScalarTy binary_type(BinOp op, ExprId l, ExprId r) const {
    if (is_comparison(op) || is_logical(op)) return ScalarTy::U8;
    if (op == BinOp::Shl || op == BinOp::Shr) return prog.expr(l).ty;
    return common_type(prog.expr(l).ty, prog.expr(r).ty);
  }

  ExprId parse_binary(int min_prec) {
    ExprId lhs = parse_primary();
    while (true) {
      int p = precedence(cur().kind);
      if (p == 0 || p < min_prec) return lhs;
      Token op = take();
      ExprId rhs = parse_binary(p + 1);
      Expr e;
      e.kind = ExprKind::Binary;
      e.bin_op = binop_of(op.kind);
      e.a = lhs;
      e.b = rhs;
      e.ty = binary_type(e.bin_op, lhs, rhs);
      e.loc = op.loc;
      lhs = prog.add_expr(e);
    }
  }

  ExprId parse_expr() { return parse_binary(1); }

  // Branch conditions are boolean expressions; a non-boolean condition e is
  // read as e != 0.
  ExprId parse_condition() {
    ExprId cond = parse_expr();
    const Expr& e = prog.expr(cond);
    bool boolean = (e.kind == ExprKind::Binary &&
                    (is_comparison(e.bin_op) || is_logical(e.bin_op))) ||
                   (e.kind == ExprKind::Unary && e.un_op == UnOp::LogNot) ||
                   (e.kind == ExprKind::IntLit && e.literal <= 1);
    if (boolean) return cond;
    Expr zero;
    zero.kind = ExprKind::IntLit;
    zero.literal = 0;
    zero.ty = ScalarTy::I32;
    zero.loc = e.loc;
    Expr ne;
    ne.kind = ExprKind::Binary;
    ne.bin_op = BinOp::Ne;
    ne.a = cond;
    ne.b = prog.add_expr(zero);
    ne.ty = ScalarTy::U8;
    ne.loc = e.loc;
    return prog.add_expr(ne);
  }

  // -------------------------------------------------------------------------
  // Statements

  std::vector<StmtId> parse_block(bool top_level = false) {
    expect(Tok::LBrace, "'{'");
    std::vector<StmtId> out;
    while (!at(Tok::RBrace)) parse_stmt(out, top_level);
    take();
    return out;
  }

  int make_assertion(AssertOrigin origin, ExprId cond, SourceLoc at_loc,
                     std::vector<StmtId>& out) {
    Stmt s;
    s.kind = StmtKind::Assert;
    s.expr = cond;
    s.loc = at_loc;
    AssertionRef ref;
    ref.id = int32_t(prog.assertions.size());
    ref.origin = origin;
    ref.loc = at_loc;
    s.assertion = ref.id;
    StmtId sid = prog.add_stmt(s);
    ref.stmt = sid;
    prog.assertions.push_back(ref);
    out.push_back(sid);
    return ref.id;
  }

  void parse_sym_input_rhs(Stmt& s) {
    std::string name = take().text;  // __sym_input_<ty>
    std::string suffix = name.substr(std::string(kSymInputPrefix).size());
    ScalarTy st;
    if (!scalar_from_name(suffix, st))
      fail("unknown symbolic input type '" + suffix + "'", ErrorKind::Type);
    expect(Tok::LParen, "'('");
    s.sym_input_name = expect(Tok::Ident, "input name").text;
    expect(Tok::RParen, "')'");
    s.is_sym_input = true;
    s.sym_input_ty = st;
  }

  void parse_call(std::vector<StmtId>& out, bool has_result, Place result,
                  SourceLoc at_loc) {
    std::string name = take().text;
    int callee = find_sig(name);
    if (callee < 0) fail("unknown function '" + name + "'", ErrorKind::Type);
    const FnSig& sig = sigs[size_t(callee)];
    Stmt s;
    s.kind = StmtKind::Call;
    s.loc = at_loc;
    s.callee = callee;
    s.has_place = has_result;
    s.place = result;
    if (has_result && !sig.result)
      fail("function '" + name + "' has no result", ErrorKind::Type);
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      s.args.push_back(parse_arg(sig, s.args.size()));
      while (at(Tok::Comma)) {
        take();
        s.args.push_back(parse_arg(sig, s.args.size()));
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Semi, "';'");
    if (s.args.size() != sig.params.size())
      fail("call to '" + name + "' expects " + std::to_string(sig.params.size()) +
               " arguments",
           ErrorKind::Type);
    check_ref_aliasing(s);
    out.push_back(prog.add_stmt(s));
  }

  CallArg parse_arg(const FnSig& sig, size_t argpos) {
    if (argpos >= sig.params.size())
      fail("too many arguments to '" + sig.name + "'", ErrorKind::Type);
    const ParamType& pt = sig.params[argpos].type;
    SourceLoc at_loc = loc();
    CallArg arg;
    if (at(Tok::Amp)) {
      take();
      std::string name = expect(Tok::Ident, "variable name").text;
      if (pt.kind != ParamType::Kind::RecordPtr)
        fail("'&' argument passed to non-record-pointer parameter", ErrorKind::Type);
      arg.is_ref = true;
      if (int g = prog.global_index(name); g >= 0) {
        const DataType& dt = prog.globals[size_t(g)].type;
        if (dt.kind != DataType::Kind::Record || dt.record != pt.record)
          fail("record pointer argument type mismatch", ErrorKind::Type);
        arg.ref.base = Place::Base::Global;
        arg.ref.index = g;
        return arg;
      }
      fail("'&' takes a record global", ErrorKind::Type);
    }
    if (pt.kind == ParamType::Kind::RecordPtr) {
      // forwarding a record pointer parameter by name
      std::string name = expect(Tok::Ident, "record pointer argument").text;
      auto it = param_index.find(name);
      if (it == param_index.end())
        fail("record pointer argument must be '&global' or a forwarded parameter",
             ErrorKind::Type);
      const ParamType& src = fn->params[size_t(it->second)].type;
      if (src.kind != ParamType::Kind::RecordPtr || src.record != pt.record)
        fail("record pointer argument type mismatch", ErrorKind::Type);
      arg.is_ref = true;
      arg.ref.base = Place::Base::Param;
      arg.ref.index = it->second;
      return arg;
    }
    if (pt.kind == ParamType::Kind::ArrayPtr) {
      std::string name = expect(Tok::Ident, "array argument").text;
      if (int g = prog.global_index(name); g >= 0) {
        const DataType& dt = prog.globals[size_t(g)].type;
        if (dt.kind != DataType::Kind::Array || dt.scalar != pt.scalar ||
            dt.array_len != pt.array_len)
          fail("array argument type mismatch", ErrorKind::Type);
        arg.is_ref = true;
        arg.ref.base = Place::Base::Global;
        arg.ref.index = g;
        return arg;
      }
      if (auto it = param_index.find(name); it != param_index.end()) {
        const ParamType& src = fn->params[size_t(it->second)].type;
        if (src.kind != ParamType::Kind::ArrayPtr || src.scalar != pt.scalar ||
            src.array_len != pt.array_len)
          fail("array argument type mismatch", ErrorKind::Type);
        arg.is_ref = true;
        arg.ref.base = Place::Base::Param;
        arg.ref.index = it->second;
        return arg;
      }
      if (auto it = local_index.find(name); it != local_index.end()) {
        const DataType& dt = fn->locals[size_t(it->second)].type;
        if (dt.kind != DataType::Kind::Array || dt.scalar != pt.scalar ||
            dt.array_len != pt.array_len)
          fail("array argument type mismatch", ErrorKind::Type);
        arg.is_ref = true;
        arg.ref.base = Place::Base::Local;
        arg.ref.index = it->second;
        return arg;
      }
      fail("unknown array argument '" + name + "'", ErrorKind::Type);
    }
    arg.is_ref = false;
    arg.expr = parse_expr();
    (void)at_loc;
    return arg;
  }

  void check_ref_aliasing(const Stmt& call) {
    // Two pointer arguments of one call may not name the same object; the
    // whole-program binding check in finish() handles forwarded aliasing.
    for (size_t a = 0; a < call.args.size(); ++a) {
      if (!call.args[a].is_ref) continue;
      for (size_t b = a + 1; b < call.args.size(); ++b) {
        if (!call.args[b].is_ref) continue;
        if (call.args[a].ref.base == call.args[b].ref.base &&
            call.args[a].ref.index == call.args[b].ref.index)
          fail("aliasing pointer arguments in one call are not supported",
               ErrorKind::UnsupportedConstruct);
      }
    }
  }

  void parse_stmt(std::vector<StmtId>& out, bool top_level) {
    SourceLoc at_loc = loc();

    if (at(Tok::Annot)) {
      take();
      if (!at_ident("assert")) fail("expected 'assert' in annotation");
      take();
      ExprId cond = parse_expr();
      expect(Tok::Semi, "';'");
      make_assertion(AssertOrigin::User, cond, at_loc, out);
      return;
    }
    if (at(Tok::KwIf)) { parse_if(out); return; }
    if (at(Tok::KwWhile)) { parse_while(out); return; }
    if (at(Tok::KwFor)) { parse_for(out); return; }
    if (at(Tok::KwBreak)) {
      take();
      expect(Tok::Semi, "';'");
      if (loop_depth == 0) fail("'break' outside of a loop");
      Stmt s; s.kind = StmtKind::Break; s.loc = at_loc;
      out.push_back(prog.add_stmt(s));
      return;
    }
    if (at(Tok::KwGoto)) {
      take();
      Stmt s; s.kind = StmtKind::Goto; s.loc = at_loc;
      s.label = expect(Tok::Ident, "label").text;
      expect(Tok::Semi, "';'");
      out.push_back(prog.add_stmt(s));
      return;
    }
    if (at(Tok::KwReturn)) {
      take();
      Stmt s; s.kind = StmtKind::Return; s.loc = at_loc;
      if (!at(Tok::Semi)) {
        if (!fn->result) fail("returning a value from a void function", ErrorKind::Type);
        s.expr = parse_expr();
      } else if (fn->result) {
        fail("missing return value", ErrorKind::Type);
      }
      expect(Tok::Semi, "';'");
      out.push_back(prog.add_stmt(s));
      return;
    }

    if (at(Tok::Ident)) {
      const std::string& name = cur().text;
      if (name == "__assert") {
        take();
        expect(Tok::LParen, "'('");
        ExprId cond = parse_expr();
        expect(Tok::RParen, "')'");
        expect(Tok::Semi, "';'");
        make_assertion(AssertOrigin::User, cond, at_loc, out);
        return;
      }
      if (name == "__countermeasure") {
        take();
        expect(Tok::LParen, "'('");
        expect(Tok::RParen, "')'");
        expect(Tok::Semi, "';'");
        Stmt s; s.kind = StmtKind::Countermeasure; s.loc = at_loc;
        out.push_back(prog.add_stmt(s));
        return;
      }
      // label
      if (ahead(1).kind == Tok::Colon) {
        if (!top_level)
          fail("labels are only allowed at the top level of a function body");
        if (!labels.insert(name).second)
          fail("duplicate label '" + name + "'", ErrorKind::Type);
        take(); take();
        Stmt s; s.kind = StmtKind::Label; s.label = name; s.loc = at_loc;
        out.push_back(prog.add_stmt(s));
        return;
      }
      // local declaration
      ScalarTy st;
      if (scalar_from_name(name, st) && ahead(1).kind == Tok::Ident) {
        parse_local_decl(out, st);
        return;
      }
      // call statement
      if (ahead(1).kind == Tok::LParen && find_sig(name) >= 0) {
        parse_call(out, /*has_result=*/false, Place{}, at_loc);
        return;
      }
      if (ahead(1).kind == Tok::LParen)
        fail("unknown function '" + name + "'", ErrorKind::Type);
      // assignment
      Place pl = parse_place();
      expect(Tok::Assign, "'='");
      parse_assign_rhs(out, pl, at_loc);
      return;
    }
    fail("expected statement");
  }

  void parse_local_decl(std::vector<StmtId>& out, ScalarTy st) {
    take();  // type
    SourceLoc at_loc = loc();
    std::string name = expect(Tok::Ident, "variable name").text;
    if (local_index.count(name) || param_index.count(name))
      fail("duplicate local '" + name + "'", ErrorKind::Type);
    if (prog.global_index(name) >= 0)
      fail("local '" + name + "' shadows a global", ErrorKind::Type);
    LocalDecl d;
    d.name = name;
    d.type.scalar = st;
    if (at(Tok::LBracket)) {
      take();
      Token len = expect(Tok::Int, "array length");
      if (len.value < 1) fail("array length must be >= 1", ErrorKind::Type);
      expect(Tok::RBracket, "']'");
      d.type.kind = DataType::Kind::Array;
      d.type.array_len = int32_t(len.value);
    }
    int idx = int(fn->locals.size());
    fn->locals.push_back(d);
    local_index[name] = idx;
    if (at(Tok::Assign)) {
      if (d.type.kind == DataType::Kind::Array)
        fail("array locals cannot have initializers", ErrorKind::Type);
      take();
      Place pl;
      pl.base = Place::Base::Local;
      pl.index = idx;
      parse_assign_rhs(out, pl, at_loc);
      return;
    }
    expect(Tok::Semi, "';'");
  }

  void parse_assign_rhs(std::vector<StmtId>& out, Place pl, SourceLoc at_loc) {
    // RHS forms: symbolic input, call, or plain expression.
    if (at(Tok::Ident) && cur().text.rfind(kSymInputPrefix, 0) == 0) {
      Stmt s;
      s.kind = StmtKind::Assign;
      s.loc = at_loc;
      s.place = pl;
      parse_sym_input_rhs(s);
      expect(Tok::Semi, "';'");
      out.push_back(prog.add_stmt(s));
      return;
    }
    if (at(Tok::Ident) && ahead(1).kind == Tok::LParen && find_sig(cur().text) >= 0) {
      parse_call(out, /*has_result=*/true, pl, at_loc);
      return;
    }
    Stmt s;
    s.kind = StmtKind::Assign;
    s.loc = at_loc;
    s.place = pl;
    s.expr = parse_expr();
    expect(Tok::Semi, "';'");
    out.push_back(prog.add_stmt(s));
  }

  void parse_if(std::vector<StmtId>& out) {
    SourceLoc at_loc = loc();
    take();
    expect(Tok::LParen, "'('");
    Stmt s;
    s.kind = StmtKind::If;
    s.loc = at_loc;
    s.expr = parse_condition();
    expect(Tok::RParen, "')'");
    s.then_block = parse_block();
    if (at(Tok::KwElse)) {
      take();
      if (at(Tok::KwIf)) {
        parse_if(s.else_block);
      } else {
        s.else_block = parse_block();
      }
    }
    out.push_back(prog.add_stmt(s));
  }

  void parse_while(std::vector<StmtId>& out) {
    SourceLoc at_loc = loc();
    take();
    expect(Tok::LParen, "'('");
    Stmt s;
    s.kind = StmtKind::While;
    s.loc = at_loc;
    s.expr = parse_condition();
    expect(Tok::RParen, "')'");
    ++loop_depth;
    s.then_block = parse_block();
    --loop_depth;
    out.push_back(prog.add_stmt(s));
  }

  // for(init; cond; step) desugars to { init; while (cond) { body; step; } }.
  void parse_for(std::vector<StmtId>& out) {
    SourceLoc at_loc = loc();
    take();
    expect(Tok::LParen, "'('");
    if (!at(Tok::Semi)) {
      // init: declaration or assignment, consumes its own ';'
      if (at(Tok::Ident)) {
        ScalarTy st;
        if (scalar_from_name(cur().text, st) && ahead(1).kind == Tok::Ident) {
          parse_local_decl(out, st);
        } else {
          Place pl = parse_place();
          expect(Tok::Assign, "'='");
          parse_assign_rhs(out, pl, at_loc);
        }
      } else {
        fail("expected for-loop initializer");
      }
    } else {
      take();
    }
    Stmt w;
    w.kind = StmtKind::While;
    w.loc = at_loc;
    if (!at(Tok::Semi)) {
      w.expr = parse_condition();
    } else {
      Expr one;
      one.kind = ExprKind::IntLit;
      one.literal = 1;
      one.ty = ScalarTy::I32;
      one.loc = at_loc;
      w.expr = prog.add_expr(one);
    }
    expect(Tok::Semi, "';'");
    std::vector<StmtId> step;
    if (!at(Tok::RParen)) {
      SourceLoc step_loc = loc();
      Place pl = parse_place();
      expect(Tok::Assign, "'='");
      Stmt s;
      s.kind = StmtKind::Assign;
      s.loc = step_loc;
      s.place = pl;
      s.expr = parse_expr();
      step.push_back(prog.add_stmt(s));
    }
    expect(Tok::RParen, "')'");
    ++loop_depth;
    w.then_block = parse_block();
    --loop_depth;
    for (StmtId sid : step) w.then_block.push_back(sid);
    out.push_back(prog.add_stmt(w));
  }

  // -------------------------------------------------------------------------
  // Function bodies and final checks

  void parse_bodies() {
    for (FnSig& sig : sigs) {
      Function f;
      f.name = sig.name;
      f.params = sig.params;
      f.result = sig.result;
      f.loc = sig.loc;
      prog.functions.push_back(std::move(f));
    }
    for (size_t k = 0; k < sigs.size(); ++k) {
      fn = &prog.functions[k];
      local_index.clear();
      param_index.clear();
      labels.clear();
      loop_depth = 0;
      for (size_t pi = 0; pi < fn->params.size(); ++pi)
        param_index[fn->params[pi].name] = int(pi);
      i = sigs[k].body_tok;
      fn->body = parse_block(/*top_level=*/true);
      check_gotos(fn->body);
    }
    fn = nullptr;
  }

  void check_gotos(const std::vector<StmtId>& body) {
    for_each_stmt(prog, body, [&](StmtId id) {
      const Stmt& s = prog.stmt(id);
      if (s.kind == StmtKind::Goto && !labels.count(s.label))
        throw Error(ErrorKind::Type, "goto to unknown label '" + s.label + "'",
                    s.loc);
    });
  }

  void resolve_entry(const std::string& requested) {
    if (!requested.empty()) {
      int idx = prog.function_index(requested);
      if (idx < 0)
        throw Error(ErrorKind::Type, "entry function '" + requested + "' not found");
      prog.entry = idx;
      return;
    }
    if (prog.functions.size() == 1) {
      prog.entry = 0;
      return;
    }
    int idx = prog.function_index("analysis_main");
    if (idx >= 0) {
      prog.entry = idx;
      return;
    }
    if (prog.functions.empty()) return;  // empty program: no entry
    throw Error(ErrorKind::Type,
                "cannot determine entry function (no 'analysis_main')");
  }

  // Whole-program pointer binding check: a call may never bind two of its
  // callee's pointer parameters to the same object.
  void check_param_bindings() {
    size_t nfun = prog.functions.size();
    auto obj_key = [](Place::Base base, size_t f, int index) {
      if (base == Place::Base::Global) return "g:" + std::to_string(index);
      return "l:" + std::to_string(f) + ":" + std::to_string(index);
    };
    std::vector<std::vector<std::set<std::string>>> bind(nfun);
    for (size_t f = 0; f < nfun; ++f) {
      bind[f].resize(prog.functions[f].params.size());
      for (size_t p = 0; p < bind[f].size(); ++p)
        bind[f][p].insert("synth:" + std::to_string(f) + ":" + std::to_string(p));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t f = 0; f < nfun; ++f) {
        for_each_stmt(prog, prog.functions[f].body, [&](StmtId id) {
          const Stmt& s = prog.stmt(id);
          if (s.kind != StmtKind::Call) return;
          for (size_t a = 0; a < s.args.size(); ++a) {
            if (!s.args[a].is_ref) continue;
            std::set<std::string>& dst = bind[size_t(s.callee)][a];
            if (s.args[a].ref.base == Place::Base::Global ||
                s.args[a].ref.base == Place::Base::Local) {
              std::string k = obj_key(s.args[a].ref.base, f, s.args[a].ref.index);
              if (dst.insert(k).second) changed = true;
            } else {
              for (const std::string& k : bind[f][size_t(s.args[a].ref.index)])
                if (dst.insert(k).second) changed = true;
            }
          }
        });
      }
    }
    for (size_t f = 0; f < nfun; ++f) {
      for_each_stmt(prog, prog.functions[f].body, [&](StmtId id) {
        const Stmt& s = prog.stmt(id);
        if (s.kind != StmtKind::Call) return;
        for (size_t a = 0; a < s.args.size(); ++a) {
          if (!s.args[a].is_ref) continue;
          for (size_t b = a + 1; b < s.args.size(); ++b) {
            if (!s.args[b].is_ref) continue;
            std::set<std::string> sa, sb;
            auto resolve = [&](const CallArg& arg) {
              std::set<std::string> r;
              if (arg.ref.base == Place::Base::Param) {
                r = bind[f][size_t(arg.ref.index)];
              } else {
                r.insert(obj_key(arg.ref.base, f, arg.ref.index));
              }
              return r;
            };
            sa = resolve(s.args[a]);
            sb = resolve(s.args[b]);
            for (const std::string& k : sa)
              if (k.rfind("synth:", 0) != 0 && sb.count(k))
                throw Error(ErrorKind::UnsupportedConstruct,
                            "two pointer arguments may alias the same object",
                            s.loc);
          }
        }
      });
    }
  }
};

}  // namespace

Program parse_unit(const SourceUnit& unit) {
  Parser p;
  p.toks = lex(unit.text);
  p.scan_top_level();
  p.parse_bodies();
  p.resolve_entry(unit.entry);
  p.check_param_bindings();
  return std::move(p.prog);
}

}  // namespace faultline
