#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "colf/column.hpp"

namespace colf::bench {

/// Reads CSV with a header row naming every schema column (any order). Quoted fields follow RFC 4180.
/// An empty unquoted field is null; `""` is the empty string. Vector elements are separated by ';'.
/// Throws kParseError naming the data row and column (both 1-based), kSchemaError for a null in a
/// non-nullable column or a header that does not match the schema, kIoError for unreadable files.
Table ingest_csv(const std::filesystem::path& path, const Schema& schema);
Table ingest_csv_text(std::string_view text, const Schema& schema);

/// Canonical text of a non-null value: shortest round-trip form for floats.
std::string render_value(const Value& v);

/// Header row plus one line per row, in the form ingest_csv reads back.
std::string write_csv(const PlainColumns& table);

/// Byte length of the canonical CSV rendering of one column (values plus one separator per row).
uint64_t csv_bytes(const ColumnVector& column);

}  // namespace colf::bench
