#include "colf/column.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace colf {

namespace {

ColumnVector::Data make_storage(const ColumnType& t) {
  switch (t.id) {
    case TypeId::kInt32: return std::vector<int32_t>{};
    case TypeId::kInt64: return std::vector<int64_t>{};
    case TypeId::kFloat64:
    case TypeId::kFixedVector: return std::vector<double>{};
    case TypeId::kUtf8: return std::vector<std::string>{};
    case TypeId::kBool: return std::vector<uint8_t>{};
  }
  return std::vector<int64_t>{};
}

}  // namespace

ColumnVector::ColumnVector(ColumnType type) : type_(type), data_(make_storage(type)) {}

Value ColumnVector::get(size_t i) const {
  if (i >= size()) fail(ErrorCode::kIndexError, "row " + std::to_string(i) + " out of range");
  if (is_null(i)) return Value::null();
  switch (type_.id) {
    case TypeId::kInt32: return Value::i32(values<int32_t>()[i]);
    case TypeId::kInt64: return Value::i64(values<int64_t>()[i]);
    case TypeId::kFloat64: return Value::f64(values<double>()[i]);
    case TypeId::kUtf8: return Value::str(values<std::string>()[i]);
    case TypeId::kBool: return Value::boolean(values<uint8_t>()[i] != 0);
    case TypeId::kFixedVector: {
      const auto& v = values<double>();
      auto first = v.begin() + static_cast<std::ptrdiff_t>(i * type_.dim);
      return Value::vec(std::vector<double>(first, first + type_.dim));
    }
  }
  return Value::null();
}

void ColumnVector::reserve(size_t n) {
  std::visit(
      [&](auto& v) { v.reserve(type_.id == TypeId::kFixedVector ? n * type_.dim : n); }, data_);
}

void ColumnVector::append(const Value& v) {
  if (v.is_null()) {
    append_null();
    return;
  }
  if (!v.conforms_to(type_)) {
    fail(ErrorCode::kTypeError, "value " + v.to_string() + " does not conform to " + type_.to_string());
  }
  switch (type_.id) {
    case TypeId::kInt32: push_i32(v.as_i32()); break;
    case TypeId::kInt64: push_i64(v.as_i64()); break;
    case TypeId::kFloat64: push_f64(v.as_f64()); break;
    case TypeId::kUtf8: push_str(v.as_str()); break;
    case TypeId::kBool: push_bool(v.as_bool()); break;
    case TypeId::kFixedVector: push_vec(v.as_vec()); break;
  }
}

void ColumnVector::append_null() {
  switch (type_.id) {
    case TypeId::kInt32: mutable_values<int32_t>().push_back(0); break;
    case TypeId::kInt64: mutable_values<int64_t>().push_back(0); break;
    case TypeId::kFloat64: mutable_values<double>().push_back(0.0); break;
    case TypeId::kUtf8: mutable_values<std::string>().emplace_back(); break;
    case TypeId::kBool: mutable_values<uint8_t>().push_back(0); break;
    case TypeId::kFixedVector: mutable_values<double>().insert(mutable_values<double>().end(), type_.dim, 0.0); break;
  }
  validity_.push_back(false);
}

void ColumnVector::mark_null(size_t i) {
  validity_.clear(i);
  switch (type_.id) {
    case TypeId::kInt32: mutable_values<int32_t>()[i] = 0; break;
    case TypeId::kInt64: mutable_values<int64_t>()[i] = 0; break;
    case TypeId::kFloat64: mutable_values<double>()[i] = 0.0; break;
    case TypeId::kUtf8: mutable_values<std::string>()[i].clear(); break;
    case TypeId::kBool: mutable_values<uint8_t>()[i] = 0; break;
    case TypeId::kFixedVector: {
      auto& v = mutable_values<double>();
      std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(i * type_.dim), type_.dim, 0.0);
      break;
    }
  }
}

void ColumnVector::push_vec(std::span<const double> v) {
  if (v.size() != type_.dim) fail(ErrorCode::kTypeError, "vector dimension mismatch");
  auto& out = mutable_values<double>();
  for (double x : v) out.push_back(canonicalize(x));
  validity_.push_back(true);
}

void ColumnVector::append_from(const ColumnVector& src, size_t row) {
  if (src.is_null(row)) {
    append_null();
    return;
  }
  switch (type_.id) {
    case TypeId::kInt32: push_i32(src.values<int32_t>()[row]); break;
    case TypeId::kInt64: push_i64(src.values<int64_t>()[row]); break;
    case TypeId::kFloat64: push_f64(src.values<double>()[row]); break;
    case TypeId::kUtf8: push_str(src.values<std::string>()[row]); break;
    case TypeId::kBool: push_bool(src.values<uint8_t>()[row] != 0); break;
    case TypeId::kFixedVector:
      push_vec(std::span<const double>(src.values<double>()).subspan(row * type_.dim, type_.dim));
      break;
  }
}

int64_t ColumnVector::integer_at(size_t i) const {
  if (type_.id == TypeId::kInt32) return values<int32_t>()[i];
  return values<int64_t>()[i];
}

ColumnVector ColumnVector::slice(size_t begin, size_t end) const {
  ColumnVector out(type_);
  out.reserve(end - begin);
  for (size_t i = begin; i < end; ++i) out.append_from(*this, i);
  return out;
}

ColumnVector ColumnVector::gather(std::span<const uint32_t> rows) const {
  ColumnVector out(type_);
  out.reserve(rows.size());
  for (uint32_t r : rows) out.append_from(*this, r);
  return out;
}

void ColumnVector::append_column(const ColumnVector& other) {
  if (!(other.type_ == type_)) fail(ErrorCode::kTypeError, "column type mismatch on append");
  reserve(size() + other.size());
  for (size_t i = 0; i < other.size(); ++i) append_from(other, i);
}

bool operator==(const ColumnVector& a, const ColumnVector& b) {
  if (!(a.type_ == b.type_) || !(a.validity_ == b.validity_)) return false;
  const size_t n = a.size();
  switch (a.type_.id) {
    case TypeId::kInt32: {
      const auto& x = a.values<int32_t>();
      const auto& y = b.values<int32_t>();
      for (size_t i = 0; i < n; ++i) {
        if (!a.is_null(i) && x[i] != y[i]) return false;
      }
      return true;
    }
    case TypeId::kInt64: {
      const auto& x = a.values<int64_t>();
      const auto& y = b.values<int64_t>();
      for (size_t i = 0; i < n; ++i) {
        if (!a.is_null(i) && x[i] != y[i]) return false;
      }
      return true;
    }
    case TypeId::kFloat64:
    case TypeId::kFixedVector: {
      const size_t dim = a.type_.id == TypeId::kFixedVector ? a.type_.dim : 1;
      const auto& x = a.values<double>();
      const auto& y = b.values<double>();
      for (size_t i = 0; i < n; ++i) {
        if (a.is_null(i)) continue;
        if (std::memcmp(&x[i * dim], &y[i * dim], dim * sizeof(double)) != 0) return false;
      }
      return true;
    }
    case TypeId::kUtf8: {
      const auto& x = a.values<std::string>();
      const auto& y = b.values<std::string>();
      for (size_t i = 0; i < n; ++i) {
        if (!a.is_null(i) && x[i] != y[i]) return false;
      }
      return true;
    }
    case TypeId::kBool: {
      const auto& x = a.values<uint8_t>();
      const auto& y = b.values<uint8_t>();
      for (size_t i = 0; i < n; ++i) {
        if (!a.is_null(i) && x[i] != y[i]) return false;
      }
      return true;
    }
  }
  return false;
}

std::vector<Value> PlainColumns::row(size_t i) const {
  std::vector<Value> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.get(i));
  return out;
}

PlainColumns PlainColumns::slice(size_t begin, size_t end) const {
  PlainColumns out{schema, {}, end - begin};
  for (const auto& c : columns) out.columns.push_back(c.slice(begin, end));
  return out;
}

PlainColumns PlainColumns::select_columns(const std::vector<std::string>& names) const {
  std::vector<Field> fields;
  PlainColumns out;
  out.row_count = row_count;
  for (const auto& n : names) {
    size_t idx = schema.index_of(n);
    fields.push_back(schema.field(idx));
    out.columns.push_back(columns[idx]);
  }
  out.schema = Schema(std::move(fields));
  return out;
}

PlainColumns make_empty_table(const Schema& schema) {
  PlainColumns t{schema, {}, 0};
  for (const auto& f : schema.fields()) t.columns.emplace_back(f.type);
  return t;
}

}  // namespace colf
