#include "colf/types.hpp"

#include <charconv>
#include <cstring>
#include <sstream>
#include <unordered_set>

namespace colf {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kEmptyChunk: return "EmptyChunk";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kPrecisionError: return "PrecisionError";
    case ErrorCode::kCardinalityError: return "CardinalityError";
    case ErrorCode::kCorruptChunk: return "CorruptChunk";
    case ErrorCode::kIndexError: return "IndexError";
    case ErrorCode::kCorruptBlock: return "CorruptBlock";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNotColf: return "NotColf";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kNameError: return "NameError";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupported: return "Unsupported";
  }
  return "Unknown";
}

ColumnType ColumnType::fixed_vector(uint32_t dim) {
  if (dim == 0) fail(ErrorCode::kTypeError, "vector dimension must be >= 1");
  return {TypeId::kFixedVector, dim};
}

size_t ColumnType::fixed_width() const {
  switch (id) {
    case TypeId::kInt32: return 4;
    case TypeId::kInt64: return 8;
    case TypeId::kFloat64: return 8;
    case TypeId::kBool: return 1;
    case TypeId::kFixedVector: return 8 * size_t{dim};
    case TypeId::kUtf8: return 0;
  }
  return 0;
}

std::string ColumnType::to_string() const {
  switch (id) {
    case TypeId::kInt32: return "int32";
    case TypeId::kInt64: return "int64";
    case TypeId::kFloat64: return "float64";
    case TypeId::kUtf8: return "utf8";
    case TypeId::kBool: return "bool";
    case TypeId::kFixedVector: return "vector<" + std::to_string(dim) + ">";
  }
  return "?";
}

ColumnType ColumnType::parse(const std::string& text) {
  if (text == "int32") return int32();
  if (text == "int64") return int64();
  if (text == "float64" || text == "double") return float64();
  if (text == "utf8" || text == "string") return utf8();
  if (text == "bool") return boolean();
  if (text.starts_with("vector<") && text.ends_with(">")) {
    uint32_t dim = 0;
    const char* first = text.data() + 7;
    const char* last = text.data() + text.size() - 1;
    auto [ptr, ec] = std::from_chars(first, last, dim);
    if (ec == std::errc() && ptr == last && dim > 0) return fixed_vector(dim);
  }
  fail(ErrorCode::kParseError, "unknown column type '" + text + "'");
}

Value Value::f64(double v) { return Value(Storage(canonicalize(v))); }

Value Value::vec(std::vector<double> v) {
  for (double& x : v) x = canonicalize(x);
  return Value(Storage(std::move(v)));
}

bool Value::conforms_to(const ColumnType& t) const {
  switch (storage_.index()) {
    case 0: return true;
    case 1: return t.id == TypeId::kInt32;
    case 2: return t.id == TypeId::kInt64;
    case 3: return t.id == TypeId::kFloat64;
    case 4: return t.id == TypeId::kUtf8;
    case 5: return t.id == TypeId::kBool;
    case 6: return t.id == TypeId::kFixedVector && as_vec().size() == t.dim;
  }
  return false;
}

int64_t Value::as_integer() const {
  if (auto* p = std::get_if<int32_t>(&storage_)) return *p;
  if (auto* p = std::get_if<int64_t>(&storage_)) return *p;
  fail(ErrorCode::kTypeError, "value is not an integer");
}

std::string Value::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (storage_.index()) {
    case 0: return "null";
    case 1: os << as_i32(); break;
    case 2: os << as_i64(); break;
    case 3: os << as_f64(); break;
    case 4: return as_str();
    case 5: return as_bool() ? "true" : "false";
    case 6: {
      const auto& v = as_vec();
      for (size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
      break;
    }
  }
  return os.str();
}

bool operator==(const Value& a, const Value& b) {
  if (a.storage_.index() != b.storage_.index()) return false;
  switch (a.storage_.index()) {
    case 3:
      return std::bit_cast<uint64_t>(a.as_f64()) == std::bit_cast<uint64_t>(b.as_f64());
    case 6: {
      const auto& x = a.as_vec();
      const auto& y = b.as_vec();
      return x.size() == y.size() &&
             (x.empty() || std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0);
    }
    default:
      return a.storage_ == b.storage_;
  }
}

std::strong_ordering compare_values(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) fail(ErrorCode::kTypeError, "null values have no order");
  if (a.storage().index() != b.storage().index()) {
    fail(ErrorCode::kTypeError, "cannot compare " + a.to_string() + " with " + b.to_string());
  }
  switch (a.storage().index()) {
    case 1: return a.as_i32() <=> b.as_i32();
    case 2: return a.as_i64() <=> b.as_i64();
    case 3: return compare_f64(a.as_f64(), b.as_f64());
    case 4: {
      int c = a.as_str().compare(b.as_str());
      return c <=> 0;
    }
    case 5: return a.as_bool() <=> b.as_bool();
    case 6: {
      const auto& x = a.as_vec();
      const auto& y = b.as_vec();
      for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        auto c = compare_f64(x[i], y[i]);
        if (c != 0) return c;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

Schema::Schema(std::vector<Field> fields) : fields_(std::move(fields)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : fields_) {
    if (f.name.empty()) fail(ErrorCode::kSchemaError, "column name must not be empty");
    if (!seen.insert(f.name).second) fail(ErrorCode::kSchemaError, "duplicate column '" + f.name + "'");
  }
}

size_t Schema::index_of(const std::string& name) const {
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].name == name) return i;
  }
  fail(ErrorCode::kNameError, "unknown column '" + name + "'");
}

bool Schema::contains(const std::string& name) const {
  for (const auto& f : fields_) {
    if (f.name == name) return true;
  }
  return false;
}

}  // namespace colf
