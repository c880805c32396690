#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "faultline/scalar.hpp"
#include "faultline/source.hpp"

namespace faultline {

using ExprId = int32_t;
using StmtId = int32_t;
constexpr int32_t kNoId = -1;

// ---------------------------------------------------------------------------
// Types

// A declarable data type: a scalar, a fixed-length array of scalars, or a
// record. Pointers occur only as parameter types and are represented on the
// parameter itself.
struct DataType {
  enum class Kind : uint8_t { Scalar, Array, Record } kind = Kind::Scalar;
  ScalarTy scalar = ScalarTy::U32;  // element type for arrays
  int32_t array_len = 0;
  int32_t record = kNoId;  // index into Program::records
};

struct RecordField {
  std::string name;
  DataType type;  // Scalar or Array
};

struct RecordType {
  std::string name;
  std::vector<RecordField> fields;
  int field_index(const std::string& n) const;
};

// Parameter type: scalar by value, or a pointer to a record / array.
struct ParamType {
  enum class Kind : uint8_t { Scalar, RecordPtr, ArrayPtr } kind = Kind::Scalar;
  ScalarTy scalar = ScalarTy::U32;  // scalar param or array element
  int32_t record = kNoId;
  int32_t array_len = 0;
};

// ---------------------------------------------------------------------------
// Places (lvalues)

// Storage reference: a variable, an array cell, a record field, or a record
// field's array cell. The base is a global, a local, or a pointer parameter.
struct Place {
  enum class Base : uint8_t { Global, Local, Param } base = Base::Global;
  int32_t index = kNoId;    // global index / local index / param index
  int32_t field = kNoId;    // record field index, or kNoId
  ExprId subscript = kNoId; // array index expression, or kNoId
};

// ---------------------------------------------------------------------------
// Expressions (side-effect free; arena-allocated per program)

enum class ExprKind : uint8_t {
  IntLit,
  Load,      // place read
  Unary,     // a
  Binary,    // a, b
  FaultXor,  // instrumentation wrapper: (a) ^ fault_<site>
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  ScalarTy ty = ScalarTy::U32;
  SourceLoc loc;
  ExprId a = kNoId, b = kNoId;
  BinOp bin_op = BinOp::Add;
  UnOp un_op = UnOp::Neg;
  uint32_t literal = 0;
  Place place;       // Load
  int32_t site = kNoId;  // FaultXor
};

// ---------------------------------------------------------------------------
// Statements

enum class StmtKind : uint8_t {
  Assign,        // place = expr | place = __sym_input_<ty>(name) | decl init
  Call,          // [place =] callee(args)
  If,            // cond, then_block, else_block
  While,         // cond, body
  Break,
  Goto,
  Label,
  Return,        // optional expr
  Assert,        // assertion statement (user or generated)
  Countermeasure,
  CounterInc,    // occurrence counter bump for one fault site
};

enum class AssertOrigin : uint8_t { User, IndexBound, ReadValid };
const char* assert_origin_name(AssertOrigin o);

// Call argument: an expression, or a reference to an addressable object for
// pointer parameters (&global_record, array_global, forwarded pointer param).
struct CallArg {
  bool is_ref = false;
  ExprId expr = kNoId;   // when !is_ref
  Place ref;             // when is_ref (field/subscript unused)
};

struct Stmt {
  StmtKind kind = StmtKind::Assign;
  SourceLoc loc;

  Place place;                 // Assign target / Call result
  bool has_place = false;      // Call result present
  ExprId expr = kNoId;         // Assign RHS / If-While cond / Return / Assert cond
  bool is_sym_input = false;   // Assign RHS is a symbolic input read
  std::string sym_input_name;
  ScalarTy sym_input_ty = ScalarTy::U32;

  std::vector<StmtId> then_block;
  std::vector<StmtId> else_block;

  std::string label;           // Goto target / Label name
  int32_t callee = kNoId;      // Call
  std::vector<CallArg> args;

  int32_t assertion = kNoId;   // Assert: index into Program::assertions
  int32_t site = kNoId;        // CounterInc: fault site id
};

// ---------------------------------------------------------------------------
// Declarations

struct GlobalDecl {
  std::string name;
  DataType type;
};

struct LocalDecl {
  std::string name;
  DataType type;  // Scalar or Array (records live in globals)
};

struct Param {
  std::string name;
  ParamType type;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  std::vector<LocalDecl> locals;
  std::optional<ScalarTy> result;  // nullopt = void
  std::vector<StmtId> body;
  SourceLoc loc;
};

struct AssertionRef {
  int32_t id = kNoId;          // unique program-wide
  AssertOrigin origin = AssertOrigin::User;
  StmtId stmt = kNoId;         // the Assert statement carrying it
  SourceLoc loc;
};

// ---------------------------------------------------------------------------
// Program

struct Program {
  std::vector<RecordType> records;
  std::vector<GlobalDecl> globals;
  std::vector<Function> functions;
  std::vector<AssertionRef> assertions;

  std::vector<Expr> exprs;
  std::vector<Stmt> stmts;

  int32_t entry = kNoId;  // index into functions

  const Expr& expr(ExprId id) const { return exprs[size_t(id)]; }
  Expr& expr(ExprId id) { return exprs[size_t(id)]; }
  const Stmt& stmt(StmtId id) const { return stmts[size_t(id)]; }
  Stmt& stmt(StmtId id) { return stmts[size_t(id)]; }

  ExprId add_expr(Expr e) {
    exprs.push_back(std::move(e));
    return ExprId(exprs.size() - 1);
  }
  StmtId add_stmt(Stmt s) {
    stmts.push_back(std::move(s));
    return StmtId(stmts.size() - 1);
  }

  int function_index(const std::string& name) const;
  int record_index(const std::string& name) const;
  int global_index(const std::string& name) const;
};

// Structural equality, ignoring source locations.
bool structurally_equal(const Program& a, const Program& b);

// Walk all statements of a function body in pre-order.
void for_each_stmt(const Program& p, const std::vector<StmtId>& block,
                   const std::function<void(StmtId)>& fn);

}  // namespace faultline
