#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "colf/bitvector.hpp"
#include "colf/types.hpp"

namespace colf {

/// Contiguous decoded values of one column plus a validity bitmap (1 = present).
/// Null slots hold a placeholder (0, 0.0, empty string, false, zero vector) so positions stay aligned.
/// FixedVector columns store their elements flattened, `dim` doubles per row.
class ColumnVector {
 public:
  using Data = std::variant<std::vector<int32_t>, std::vector<int64_t>, std::vector<double>,
                            std::vector<std::string>, std::vector<uint8_t>>;

  ColumnVector() : ColumnVector(ColumnType::int64()) {}
  explicit ColumnVector(ColumnType type);

  const ColumnType& type() const { return type_; }
  size_t size() const { return validity_.size(); }
  bool empty() const { return size() == 0; }
  const BitVector& validity() const { return validity_; }
  bool is_null(size_t i) const { return !validity_.get(i); }
  size_t null_count() const { return size() - validity_.popcount(); }

  Value get(size_t i) const;

  void reserve(size_t n);
  /// Throws kTypeError when `v` does not conform to the column type.
  void append(const Value& v);
  void append_null();
  /// Clears validity of row i and overwrites its slot with the placeholder.
  void mark_null(size_t i);
  void append_from(const ColumnVector& src, size_t row);

  void push_i32(int32_t v) { std::get<std::vector<int32_t>>(data_).push_back(v); validity_.push_back(true); }
  void push_i64(int64_t v) { std::get<std::vector<int64_t>>(data_).push_back(v); validity_.push_back(true); }
  void push_f64(double v) { std::get<std::vector<double>>(data_).push_back(canonicalize(v)); validity_.push_back(true); }
  void push_str(std::string v) { std::get<std::vector<std::string>>(data_).push_back(std::move(v)); validity_.push_back(true); }
  void push_bool(bool v) { std::get<std::vector<uint8_t>>(data_).push_back(v ? 1 : 0); validity_.push_back(true); }
  void push_vec(std::span<const double> v);

  template <typename T>
  const std::vector<T>& values() const { return std::get<std::vector<T>>(data_); }
  template <typename T>
  std::vector<T>& mutable_values() { return std::get<std::vector<T>>(data_); }

  /// Integer payload at row i widened to int64 (Int32/Int64 columns).
  int64_t integer_at(size_t i) const;

  ColumnVector slice(size_t begin, size_t end) const;
  ColumnVector gather(std::span<const uint32_t> rows) const;
  void append_column(const ColumnVector& other);

  /// Equal validity and bitwise-equal present values; placeholders are ignored.
  friend bool operator==(const ColumnVector& a, const ColumnVector& b);

 private:
  ColumnType type_;
  BitVector validity_;
  Data data_;
};

/// Fully decoded columns of a table, batches concatenated in order.
struct PlainColumns {
  Schema schema;
  std::vector<ColumnVector> columns;
  size_t row_count = 0;

  const ColumnVector& column(const std::string& name) const { return columns.at(schema.index_of(name)); }
  std::vector<Value> row(size_t i) const;

  PlainColumns slice(size_t begin, size_t end) const;
  PlainColumns select_columns(const std::vector<std::string>& names) const;

  friend bool operator==(const PlainColumns&, const PlainColumns&) = default;
};

using Table = PlainColumns;

/// Builds an empty table with one column per schema field.
PlainColumns make_empty_table(const Schema& schema);

}  // namespace colf
