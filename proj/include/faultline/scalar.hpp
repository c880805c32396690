#pragma once

#include <cstdint>
#include <string>

namespace faultline {

// Scalar machine types of the FIC language. All arithmetic is fixed-width
// two's complement with wraparound.
enum class ScalarTy : uint8_t { I8, U8, I16, U16, I32, U32 };

constexpr unsigned width_of(ScalarTy t) {
  switch (t) {
    case ScalarTy::I8:
    case ScalarTy::U8: return 8;
    case ScalarTy::I16:
    case ScalarTy::U16: return 16;
    case ScalarTy::I32:
    case ScalarTy::U32: return 32;
  }
  return 32;
}

constexpr bool is_signed(ScalarTy t) {
  return t == ScalarTy::I8 || t == ScalarTy::I16 || t == ScalarTy::I32;
}

constexpr uint32_t width_mask(ScalarTy t) {
  return width_of(t) == 32 ? 0xffffffffu : ((1u << width_of(t)) - 1u);
}

constexpr int64_t type_min(ScalarTy t) {
  return is_signed(t) ? -(int64_t(1) << (width_of(t) - 1)) : 0;
}

constexpr int64_t type_max(ScalarTy t) {
  return is_signed(t) ? (int64_t(1) << (width_of(t) - 1)) - 1
                      : (int64_t(1) << width_of(t)) - 1;
}

const char* scalar_name(ScalarTy t);
bool scalar_from_name(const std::string& name, ScalarTy& out);

// Common type of a binary operation: wider operand wins; at equal width the
// result is unsigned if either operand is.
constexpr ScalarTy common_type(ScalarTy a, ScalarTy b) {
  unsigned wa = width_of(a), wb = width_of(b);
  unsigned w = wa > wb ? wa : wb;
  bool sgn = (wa == wb) ? (is_signed(a) && is_signed(b))
                        : (wa > wb ? is_signed(a) : is_signed(b));
  switch (w) {
    case 8: return sgn ? ScalarTy::I8 : ScalarTy::U8;
    case 16: return sgn ? ScalarTy::I16 : ScalarTy::U16;
    default: return sgn ? ScalarTy::I32 : ScalarTy::U32;
  }
}

// A scalar runtime value: the low `width` bits of `bits` are significant.
// Signed values are stored in two's complement within those bits.
struct Scalar {
  uint32_t bits = 0;
  ScalarTy ty = ScalarTy::U32;

  Scalar() = default;
  Scalar(uint32_t b, ScalarTy t) : bits(b & width_mask(t)), ty(t) {}

  // Mathematical value, sign-extended for signed types.
  int64_t value() const {
    if (!is_signed(ty)) return int64_t(bits);
    uint32_t m = width_mask(ty);
    uint32_t sign_bit = 1u << (width_of(ty) - 1);
    uint32_t v = bits & m;
    if (v & sign_bit) return int64_t(v) - (int64_t(m) + 1);
    return int64_t(v);
  }

  bool is_zero() const { return (bits & width_mask(ty)) == 0; }

  bool operator==(const Scalar& o) const {
    return ty == o.ty && (bits & width_mask(ty)) == (o.bits & width_mask(o.ty));
  }
};

// Build a scalar of type t from a mathematical value (wraps).
Scalar make_scalar(int64_t v, ScalarTy t);

// Convert between scalar types. Widening extends by the *source* signedness,
// narrowing truncates.
Scalar convert(Scalar v, ScalarTy to);

enum class BinOp : uint8_t {
  Add, Sub, Mul, Div, Rem,
  BitAnd, BitOr, BitXor, Shl, Shr,
  Eq, Ne, Lt, Le, Gt, Ge,
  LogAnd, LogOr,
};

enum class UnOp : uint8_t { Neg, LogNot };

bool is_comparison(BinOp op);
bool is_logical(BinOp op);
const char* binop_text(BinOp op);
const char* unop_text(UnOp op);

// Total evaluation of a binary operation. Operands are first converted to the
// common type (comparisons and logical ops produce U8 0/1; shifts keep the
// left operand's type). Division and remainder by zero yield 0; shifting by
// the full width or more pushes all value bits out.
Scalar eval_binop(BinOp op, Scalar lhs, Scalar rhs);
Scalar eval_unop(UnOp op, Scalar v);

}  // namespace faultline
