#include "faultline/scalar.hpp"

namespace faultline {

const char* scalar_name(ScalarTy t) {
  switch (t) {
    case ScalarTy::I8: return "i8";
    case ScalarTy::U8: return "u8";
    case ScalarTy::I16: return "i16";
    case ScalarTy::U16: return "u16";
    case ScalarTy::I32: return "i32";
    case ScalarTy::U32: return "u32";
  }
  return "u32";
}

bool scalar_from_name(const std::string& name, ScalarTy& out) {
  if (name == "i8") { out = ScalarTy::I8; return true; }
  if (name == "u8") { out = ScalarTy::U8; return true; }
  if (name == "i16") { out = ScalarTy::I16; return true; }
  if (name == "u16") { out = ScalarTy::U16; return true; }
  if (name == "i32") { out = ScalarTy::I32; return true; }
  if (name == "u32") { out = ScalarTy::U32; return true; }
  return false;
}

Scalar make_scalar(int64_t v, ScalarTy t) {
  return Scalar(uint32_t(uint64_t(v)), t);
}

Scalar convert(Scalar v, ScalarTy to) {
  // value() sign-extends by source signedness; re-wrapping truncates.
  return make_scalar(v.value(), to);
}

bool is_comparison(BinOp op) {
  switch (op) {
    case BinOp::Eq: case BinOp::Ne: case BinOp::Lt:
    case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_logical(BinOp op) {
  return op == BinOp::LogAnd || op == BinOp::LogOr;
}

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Rem: return "%";
    case BinOp::BitAnd: return "&";
    case BinOp::BitOr: return "|";
    case BinOp::BitXor: return "^";
    case BinOp::Shl: return "<<";
    case BinOp::Shr: return ">>";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::LogAnd: return "&&";
    case BinOp::LogOr: return "||";
  }
  return "?";
}

const char* unop_text(UnOp op) {
  return op == UnOp::Neg ? "-" : "!";
}

static Scalar bool_scalar(bool b) { return Scalar(b ? 1u : 0u, ScalarTy::U8); }

Scalar eval_binop(BinOp op, Scalar lhs, Scalar rhs) {
  if (is_logical(op)) {
    bool l = !lhs.is_zero(), r = !rhs.is_zero();
    return bool_scalar(op == BinOp::LogAnd ? (l && r) : (l || r));
  }
  if (op == BinOp::Shl || op == BinOp::Shr) {
    ScalarTy t = lhs.ty;
    int64_t amt = convert(rhs, ScalarTy::U32).value();
    unsigned w = width_of(t);
    if (amt >= int64_t(w)) {
      if (op == BinOp::Shl || !is_signed(t)) return Scalar(0, t);
      return make_scalar(lhs.value() < 0 ? -1 : 0, t);
    }
    if (op == BinOp::Shl) return make_scalar(int64_t(uint64_t(lhs.bits) << amt), t);
    if (!is_signed(t)) return Scalar(lhs.bits >> amt, t);
    return make_scalar(lhs.value() >> amt, t);
  }

  ScalarTy t = common_type(lhs.ty, rhs.ty);
  Scalar l = convert(lhs, t), r = convert(rhs, t);
  if (is_comparison(op)) {
    int64_t a = l.value(), b = r.value();
    switch (op) {
      case BinOp::Eq: return bool_scalar(a == b);
      case BinOp::Ne: return bool_scalar(a != b);
      case BinOp::Lt: return bool_scalar(a < b);
      case BinOp::Le: return bool_scalar(a <= b);
      case BinOp::Gt: return bool_scalar(a > b);
      default: return bool_scalar(a >= b);
    }
  }
  switch (op) {
    case BinOp::Add: return make_scalar(l.value() + r.value(), t);
    case BinOp::Sub: return make_scalar(l.value() - r.value(), t);
    case BinOp::Mul:
      // Low bits are what wraparound keeps; multiply unsigned to avoid UB.
      return make_scalar(int64_t(uint64_t(l.value()) * uint64_t(r.value())), t);
    case BinOp::Div: {
      if (r.value() == 0) return Scalar(0, t);
      return make_scalar(l.value() / r.value(), t);
    }
    case BinOp::Rem: {
      if (r.value() == 0) return Scalar(0, t);
      return make_scalar(l.value() % r.value(), t);
    }
    case BinOp::BitAnd: return Scalar(l.bits & r.bits, t);
    case BinOp::BitOr: return Scalar(l.bits | r.bits, t);
    case BinOp::BitXor: return Scalar(l.bits ^ r.bits, t);
    default: return Scalar(0, t);
  }
}

Scalar eval_unop(UnOp op, Scalar v) {
  if (op == UnOp::LogNot) return bool_scalar(v.is_zero());
  return make_scalar(-v.value(), v.ty);
}

}  // namespace faultline
