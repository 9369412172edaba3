#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "colf/error.hpp"

namespace colf {

enum class TypeId : uint8_t {
  kInt32 = 1,
  kInt64 = 2,
  kFloat64 = 3,
  kUtf8 = 4,
  kBool = 5,
  kFixedVector = 6,
};

/// Logical column type. FixedVector carries its element count; every row has exactly `dim` Float64 elements.
struct ColumnType {
  TypeId id = TypeId::kInt64;
  uint32_t dim = 0;

  static ColumnType int32() { return {TypeId::kInt32, 0}; }
  static ColumnType int64() { return {TypeId::kInt64, 0}; }
  static ColumnType float64() { return {TypeId::kFloat64, 0}; }
  static ColumnType utf8() { return {TypeId::kUtf8, 0}; }
  static ColumnType boolean() { return {TypeId::kBool, 0}; }
  static ColumnType fixed_vector(uint32_t dim);

  bool is_integer() const { return id == TypeId::kInt32 || id == TypeId::kInt64; }
  /// Bytes one value occupies in a fixed-width layout; 0 for variable-width strings.
  size_t fixed_width() const;

  std::string to_string() const;
  /// Accepts int32, int64, float64, utf8, bool and vector<N>.
  static ColumnType parse(const std::string& text);

  friend bool operator==(const ColumnType&, const ColumnType&) = default;
};

/// Tagged scalar. The monostate alternative is SQL NULL.
class Value {
 public:
  using Storage =
      std::variant<std::monostate, int32_t, int64_t, double, std::string, bool, std::vector<double>>;

  Value() = default;
  static Value null() { return Value(); }
  static Value i32(int32_t v) { return Value(Storage(v)); }
  static Value i64(int64_t v) { return Value(Storage(v)); }
  static Value f64(double v);
  static Value str(std::string v) { return Value(Storage(std::move(v))); }
  static Value boolean(bool v) { return Value(Storage(v)); }
  static Value vec(std::vector<double> v);

  bool is_null() const { return std::holds_alternative<std::monostate>(storage_); }
  /// True when the payload is a legal value for `t` (nulls match every type).
  bool conforms_to(const ColumnType& t) const;

  int32_t as_i32() const { return std::get<int32_t>(storage_); }
  int64_t as_i64() const { return std::get<int64_t>(storage_); }
  double as_f64() const { return std::get<double>(storage_); }
  const std::string& as_str() const { return std::get<std::string>(storage_); }
  bool as_bool() const { return std::get<bool>(storage_); }
  const std::vector<double>& as_vec() const { return std::get<std::vector<double>>(storage_); }

  /// Integer payload widened to int64 (Int32 and Int64 only).
  int64_t as_integer() const;

  const Storage& storage() const { return storage_; }
  std::string to_string() const;

  /// Bitwise equality: floats compare by bit pattern.
  friend bool operator==(const Value& a, const Value& b);

 private:
  explicit Value(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

inline constexpr uint64_t kCanonicalNanBits = 0x7ff8000000000000ULL;

inline double canonicalize(double v) {
  return v != v ? std::bit_cast<double>(kCanonicalNanBits) : v;
}

/// Maps a double onto an unsigned key whose integer order is the IEEE total order.
inline uint64_t float_order_key(double v) {
  uint64_t bits = std::bit_cast<uint64_t>(canonicalize(v));
  return (bits >> 63) ? ~bits : bits | (1ULL << 63);
}

inline std::strong_ordering compare_f64(double a, double b) {
  return float_order_key(a) <=> float_order_key(b);
}

/// Total order over two non-null values of the same type. Throws kTypeError on a type mismatch.
std::strong_ordering compare_values(const Value& a, const Value& b);

struct Field {
  std::string name;
  ColumnType type;
  bool nullable = true;

  friend bool operator==(const Field&, const Field&) = default;
};

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<Field> fields);

  size_t size() const { return fields_.size(); }
  const Field& field(size_t i) const { return fields_.at(i); }
  const std::vector<Field>& fields() const { return fields_; }
  /// Throws kNameError when the name is not present.
  size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<Field> fields_;
};

}  // namespace colf
