#include "colf/bench/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "colf/error.hpp"

namespace colf::bench {

namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

/// Splits RFC 4180 records. Returns false at end of input.
class RecordReader {
 public:
  explicit RecordReader(std::string_view text) : text_(text) {}

  bool next(std::vector<Field>& out) {
    out.clear();
    if (pos_ >= text_.size()) return false;
    ++record_;
    Field f;
    while (true) {
      if (pos_ >= text_.size()) {
        out.push_back(std::move(f));
        return true;
      }
      const char c = text_[pos_];
      if (c == '"' && f.text.empty() && !f.quoted) {
        f.quoted = true;
        ++pos_;
        while (true) {
          if (pos_ >= text_.size()) fail(ErrorCode::kParseError, where(out.size()) + ": unterminated quoted field");
          const char q = text_[pos_++];
          if (q == '"') {
            if (pos_ < text_.size() && text_[pos_] == '"') {
              f.text.push_back('"');
              ++pos_;
            } else {
              break;
            }
          } else {
            f.text.push_back(q);
          }
        }
        if (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '\n' && text_[pos_] != '\r') {
          fail(ErrorCode::kParseError, where(out.size()) + ": text after closing quote");
        }
        continue;
      }
      ++pos_;
      if (c == ',') {
        out.push_back(std::move(f));
        f = Field{};
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        out.push_back(std::move(f));
        return true;
      } else {
        if (f.quoted) fail(ErrorCode::kParseError, where(out.size()) + ": text after closing quote");
        f.text.push_back(c);
      }
    }
  }

  /// Data rows are numbered from 1; the header is row 0.
  std::string where(size_t column) const {
    return "row " + std::to_string(record_ - 1) + ", column " + std::to_string(column + 1);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  size_t record_ = 0;
};

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end && !s.empty();
}

Value parse_scalar(const ColumnType& type, const std::string& text, bool& ok) {
  ok = true;
  switch (type.id) {
    case TypeId::kInt32: {
      int32_t v = 0;
      ok = parse_number(text, v);
      return Value::i32(v);
    }
    case TypeId::kInt64: {
      int64_t v = 0;
      ok = parse_number(text, v);
      return Value::i64(v);
    }
    case TypeId::kFloat64: {
      double v = 0;
      ok = parse_number(text, v);
      return Value::f64(v);
    }
    case TypeId::kUtf8: return Value::str(text);
    case TypeId::kBool:
      if (text == "true" || text == "1") return Value::boolean(true);
      if (text == "false" || text == "0") return Value::boolean(false);
      ok = false;
      return Value();
    case TypeId::kFixedVector: {
      std::vector<double> v;
      size_t start = 0;
      while (start <= text.size()) {
        size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        double x = 0;
        if (!parse_number(std::string_view(text).substr(start, end - start), x)) {
          ok = false;
          return Value();
        }
        v.push_back(x);
        start = end + 1;
      }
      if (v.size() != type.dim) ok = false;
      return ok ? Value::vec(std::move(v)) : Value();
    }
  }
  ok = false;
  return Value();
}

void append_double(std::string& out, double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, p);
}

void append_quoted(std::string& out, const std::string& s) {
  const bool needs = s.empty() || s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) {
    out += s;
    return;
  }
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void append_cell(std::string& out, const ColumnVector& col, size_t row) {
  if (col.is_null(row)) return;
  if (col.type().id == TypeId::kUtf8) {
    append_quoted(out, col.values<std::string>()[row]);
  } else {
    out += render_value(col.get(row));
  }
}

}  // namespace

std::string render_value(const Value& v) {
  std::string out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
        } else if constexpr (std::is_same_v<T, bool>) {
          out = x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          append_double(out, x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out = x;
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          for (size_t i = 0; i < x.size(); ++i) {
            if (i) out.push_back(';');
            append_double(out, x[i]);
          }
        } else {
          out = std::to_string(x);
        }
      },
      v.storage());
  return out;
}

Table ingest_csv_text(std::string_view text, const Schema& schema) {
  RecordReader reader(text);
  std::vector<Field> record;
  if (!reader.next(record)) fail(ErrorCode::kSchemaError, "CSV has no header row");
  if (record.size() != schema.size()) {
    fail(ErrorCode::kSchemaError, "CSV header has " + std::to_string(record.size()) + " columns, schema has " +
                                      std::to_string(schema.size()));
  }
  std::vector<size_t> target(record.size());
  std::vector<bool> seen(schema.size(), false);
  for (size_t c = 0; c < record.size(); ++c) {
    if (!schema.contains(record[c].text)) fail(ErrorCode::kSchemaError, "CSV column '" + record[c].text + "' not in schema");
    target[c] = schema.index_of(record[c].text);
    if (seen[target[c]]) fail(ErrorCode::kSchemaError, "CSV column '" + record[c].text + "' repeated");
    seen[target[c]] = true;
  }

  Table table = make_empty_table(schema);
  while (reader.next(record)) {
    if (target.size() > 1 && record.size() == 1 && record[0].text.empty() && !record[0].quoted) continue;
    if (record.size() != target.size()) {
      fail(ErrorCode::kParseError, reader.where(std::min(record.size(), target.size())) + ": expected " +
                                       std::to_string(target.size()) + " fields, found " + std::to_string(record.size()));
    }
    for (size_t c = 0; c < record.size(); ++c) {
      const Field& f = record[c];
      const colf::Field& field = schema.field(target[c]);
      if (f.text.empty() && !f.quoted) {
        if (!field.nullable) {
          fail(ErrorCode::kSchemaError, reader.where(c) + ": null in non-nullable column '" + field.name + "'");
        }
        table.columns[target[c]].append_null();
        continue;
      }
      bool ok = false;
      Value v = parse_scalar(field.type, f.text, ok);
      if (!ok) {
        fail(ErrorCode::kParseError, reader.where(c) + ": cannot read '" + f.text + "' as " + field.type.to_string());
      }
      table.columns[target[c]].append(v);
    }
    ++table.row_count;
  }
  return table;
}

Table ingest_csv(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_csv_text(buf.str(), schema);
}

std::string write_csv(const PlainColumns& table) {
  std::string out;
  for (size_t c = 0; c < table.schema.size(); ++c) {
    if (c) out.push_back(',');
    append_quoted(out, table.schema.field(c).name);
  }
  out.push_back('\n');
  for (size_t r = 0; r < table.row_count; ++r) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out.push_back(',');
      append_cell(out, table.columns[c], r);
    }
    out.push_back('\n');
  }
  return out;
}

uint64_t csv_bytes(const ColumnVector& column) {
  uint64_t n = 0;
  std::string cell;
  for (size_t r = 0; r < column.size(); ++r) {
    cell.clear();
    append_cell(cell, column, r);
    n += cell.size() + 1;
  }
  return n;
}

}  // namespace colf::bench
