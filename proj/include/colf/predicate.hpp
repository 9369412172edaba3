#pragma once

#include <string>
#include <vector>

#include "colf/bitvector.hpp"
#include "colf/column.hpp"
#include "colf/types.hpp"

namespace colf {

enum class CompareOp : uint8_t { kEq, kGt, kLt, kGe, kLe, kBetween };

std::string_view compare_op_symbol(CompareOp op);

/// Single-column comparison against a literal. Between is inclusive on both ends.
struct Predicate {
  std::string column;
  CompareOp op = CompareOp::kEq;
  Value operand;
  Value operand_hi;  // Between only

  static Predicate eq(std::string col, Value v) { return {std::move(col), CompareOp::kEq, std::move(v), {}}; }
  static Predicate gt(std::string col, Value v) { return {std::move(col), CompareOp::kGt, std::move(v), {}}; }
  static Predicate lt(std::string col, Value v) { return {std::move(col), CompareOp::kLt, std::move(v), {}}; }
  static Predicate ge(std::string col, Value v) { return {std::move(col), CompareOp::kGe, std::move(v), {}}; }
  static Predicate le(std::string col, Value v) { return {std::move(col), CompareOp::kLe, std::move(v), {}}; }
  static Predicate between(std::string col, Value lo, Value hi) {
    return {std::move(col), CompareOp::kBetween, std::move(lo), std::move(hi)};
  }

  /// Throws kTypeError when operands do not match `type`, are null, or Between has lo > hi.
  void validate(const ColumnType& type) const;
  std::string to_string() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Conjunction (AND) of predicates.
using PredicateList = std::vector<Predicate>;

/// Truth of `p` on a non-null value. Throws kTypeError on type mismatch or a null input.
bool predicate_eval_scalar(const Predicate& p, const Value& v);

/// Evaluates `p` over rows [begin, end) of `column`; nulls never match. Result has end - begin bits.
BitVector evaluate_predicate(const Predicate& p, const ColumnVector& column, size_t begin, size_t end);

inline BitVector evaluate_predicate(const Predicate& p, const ColumnVector& column) {
  return evaluate_predicate(p, column, 0, column.size());
}

}  // namespace colf
