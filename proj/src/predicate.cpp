#include "colf/predicate.hpp"

namespace colf {

std::string_view compare_op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kGt: return ">";
    case CompareOp::kLt: return "<";
    case CompareOp::kGe: return ">=";
    case CompareOp::kLe: return "<=";
    case CompareOp::kBetween: return "between";
  }
  return "?";
}

void Predicate::validate(const ColumnType& type) const {
  if (type.id == TypeId::kFixedVector) {
    fail(ErrorCode::kTypeError, "predicates on vector column '" + column + "' are not supported");
  }
  if (operand.is_null() || !operand.conforms_to(type)) {
    fail(ErrorCode::kTypeError, "operand " + operand.to_string() + " does not match " + type.to_string() +
                                    " column '" + column + "'");
  }
  if (op == CompareOp::kBetween) {
    if (operand_hi.is_null() || !operand_hi.conforms_to(type)) {
      fail(ErrorCode::kTypeError, "upper operand does not match column '" + column + "'");
    }
    if (compare_values(operand, operand_hi) > 0) {
      fail(ErrorCode::kTypeError, "between bounds out of order on '" + column + "'");
    }
  }
}

std::string Predicate::to_string() const {
  if (op == CompareOp::kBetween) {
    return column + " between " + operand.to_string() + " and " + operand_hi.to_string();
  }
  return column + " " + std::string(compare_op_symbol(op)) + " " + operand.to_string();
}

bool predicate_eval_scalar(const Predicate& p, const Value& v) {
  if (v.is_null()) fail(ErrorCode::kTypeError, "null passed to scalar predicate evaluation");
  auto c = compare_values(v, p.operand);
  switch (p.op) {
    case CompareOp::kEq: return c == 0;
    case CompareOp::kGt: return c > 0;
    case CompareOp::kLt: return c < 0;
    case CompareOp::kGe: return c >= 0;
    case CompareOp::kLe: return c <= 0;
    case CompareOp::kBetween: return c >= 0 && compare_values(v, p.operand_hi) <= 0;
  }
  return false;
}

namespace {

template <typename T, typename Key>
BitVector eval_typed(const std::vector<T>& data, const BitVector& validity, size_t begin, size_t end,
                     CompareOp op, Key lo, Key hi, auto&& key_of) {
  BitVector out(end - begin);
  auto words = out.mutable_words();
  auto run = [&](auto&& test) {
    for (size_t i = begin; i < end; ++i) {
      const size_t j = i - begin;
      words[j >> 6] |= uint64_t{test(key_of(data[i])) && validity.get(i)} << (j & 63);
    }
  };
  switch (op) {
    case CompareOp::kEq: run([&](const Key& k) { return k == lo; }); break;
    case CompareOp::kGt: run([&](const Key& k) { return k > lo; }); break;
    case CompareOp::kLt: run([&](const Key& k) { return k < lo; }); break;
    case CompareOp::kGe: run([&](const Key& k) { return k >= lo; }); break;
    case CompareOp::kLe: run([&](const Key& k) { return k <= lo; }); break;
    case CompareOp::kBetween: run([&](const Key& k) { return k >= lo && k <= hi; }); break;
  }
  return out;
}

}  // namespace

BitVector evaluate_predicate(const Predicate& p, const ColumnVector& column, size_t begin, size_t end) {
  p.validate(column.type());
  const auto& valid = column.validity();
  const Value& hi_v = p.op == CompareOp::kBetween ? p.operand_hi : p.operand;
  switch (column.type().id) {
    case TypeId::kInt32:
      return eval_typed(column.values<int32_t>(), valid, begin, end, p.op, p.operand.as_i32(), hi_v.as_i32(),
                        [](int32_t v) { return v; });
    case TypeId::kInt64:
      return eval_typed(column.values<int64_t>(), valid, begin, end, p.op, p.operand.as_i64(), hi_v.as_i64(),
                        [](int64_t v) { return v; });
    case TypeId::kFloat64:
      return eval_typed(column.values<double>(), valid, begin, end, p.op, float_order_key(p.operand.as_f64()),
                        float_order_key(hi_v.as_f64()), [](double v) { return float_order_key(v); });
    case TypeId::kBool:
      return eval_typed(column.values<uint8_t>(), valid, begin, end, p.op, uint8_t{p.operand.as_bool()},
                        uint8_t{hi_v.as_bool()}, [](uint8_t v) { return v; });
    case TypeId::kUtf8: {
      const std::string& lo = p.operand.as_str();
      const std::string& hi = hi_v.as_str();
      return eval_typed(column.values<std::string>(), valid, begin, end, p.op, std::string_view(lo),
                        std::string_view(hi), [](const std::string& v) { return std::string_view(v); });
    }
    case TypeId::kFixedVector: break;
  }
  fail(ErrorCode::kTypeError, "unsupported predicate column type");
}

}  // namespace colf
