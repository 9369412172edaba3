#include "colf/memrep.hpp"

#include <algorithm>

namespace colf {

namespace {

Schema project_schema(const Schema& schema, const std::vector<size_t>& projection) {
  std::vector<Field> fields;
  for (size_t i : projection) fields.push_back(schema.field(i));
  return Schema(std::move(fields));
}

}  // namespace

LazyColumns::LazyColumns(std::shared_ptr<const ByteSource> source, FileFooter footer, std::vector<size_t> projection,
                         std::shared_ptr<DecodeCounters> counters)
    : source_(std::move(source)),
      footer_(std::move(footer)),
      projection_(std::move(projection)),
      schema_(project_schema(footer_.schema, projection_)),
      counters_(counters ? std::move(counters) : std::make_shared<DecodeCounters>()) {}

std::pair<size_t, uint64_t> LazyColumns::locate(uint64_t row) const {
  if (row >= footer_.row_count) fail(ErrorCode::kIndexError, "row " + std::to_string(row) + " out of range");
  auto it = std::upper_bound(footer_.batches.begin(), footer_.batches.end(), row,
                             [](uint64_t r, const RowBatchMeta& b) { return r < b.first_row; });
  const size_t b = static_cast<size_t>(it - footer_.batches.begin()) - 1;
  return {b, row - footer_.batches[b].first_row};
}

Value LazyColumns::value_at(size_t column, uint64_t row) const {
  if (column >= projection_.size()) fail(ErrorCode::kIndexError, "column " + std::to_string(column) + " out of range");
  auto [b, offset] = locate(row);
  ChunkReader reader = chunk(b, projection_[column]);
  counters_->add_chunk_opened();
  const uint32_t pos = static_cast<uint32_t>(offset);
  ColumnVector out(reader.type());
  gather_chunk_into(reader, std::span<const uint32_t>(&pos, 1), out);
  return out.get(0);
}

std::vector<size_t> resolve_projection(const Schema& schema, const std::vector<std::string>& names) {
  std::vector<size_t> out;
  for (const auto& n : names) out.push_back(schema.index_of(n));
  return out;
}

std::vector<std::string> all_column_names(const Schema& schema) {
  std::vector<std::string> out;
  for (const auto& f : schema.fields()) out.push_back(f.name);
  return out;
}

void decode_chunk_into(ChunkReader& reader, ColumnVector& out) {
  for (size_t p = 0; p < reader.page_count(); ++p) out.append_column(reader.decode_page(p));
}

void gather_chunk_into(ChunkReader& reader, std::span<const uint32_t> rows, ColumnVector& out) {
  if (rows.empty()) return;
  const BitVector& presence = reader.presence();
  const bool has_nulls = reader.meta().presence_page.has_value();
  PageFormat fmt = reader.format();
  std::vector<uint32_t> local;
  size_t i = 0;
  while (i < rows.size()) {
    const size_t p = rows[i] / kPageValues;
    const uint32_t first = static_cast<uint32_t>(ChunkReader::page_first_row(p));
    local.clear();
    while (i < rows.size() && rows[i] / kPageValues == p) local.push_back(rows[i++] - first);
    auto bytes = reader.page_bytes(p);
    const size_t base = out.size();
    gather_page_into(fmt, bytes, reader.page(p).value_count, local, out);
    if (out.size() != base + local.size()) fail(ErrorCode::kCorruptChunk, "page gathered the wrong number of values");
    if (has_nulls) {
      for (size_t k = 0; k < local.size(); ++k) {
        if (!presence.get(first + local[k])) out.mark_null(base + k);
      }
    }
    reader.count_values(local.size());
  }
}

LoadResult load_plain(const LazyColumns& lazy) {
  const DecodeStats before = lazy.stats();
  const auto& footer = lazy.footer();
  const size_t ncols = lazy.projection().size();
  const size_t nbatches = footer.batches.size();
  std::vector<ColumnVector> parts(ncols * nbatches);
  for (size_t c = 0; c < ncols; ++c) {
    for (size_t b = 0; b < nbatches; ++b) parts[c * nbatches + b] = ColumnVector(lazy.schema().field(c).type);
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (size_t k = 0; k < parts.size(); ++k) {
    try {
      const size_t c = k / nbatches;
      const size_t b = k % nbatches;
      ChunkReader reader = lazy.chunk(b, lazy.projection()[c]);
      lazy.counters().add_chunk_opened();
      decode_chunk_into(reader, parts[k]);
    } catch (...) {
#pragma omp critical(colf_load_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  LoadResult result;
  result.table.schema = lazy.schema();
  result.table.row_count = footer.row_count;
  for (size_t c = 0; c < ncols; ++c) {
    ColumnVector col(lazy.schema().field(c).type);
    col.reserve(footer.row_count);
    for (size_t b = 0; b < nbatches; ++b) col.append_column(parts[c * nbatches + b]);
    result.table.columns.push_back(std::move(col));
  }
  result.stats = lazy.stats() - before;
  return result;
}

LoadResult load_plain(std::shared_ptr<const ByteSource> source, const std::vector<std::string>& projection) {
  LazyColumns lazy = open_lazy(std::move(source), projection);
  LoadResult r = load_plain(lazy);
  r.stats = lazy.stats();
  return r;
}

LazyColumns open_lazy(std::shared_ptr<const ByteSource> source, const std::vector<std::string>& projection,
                      std::shared_ptr<DecodeCounters> counters) {
  if (!counters) counters = std::make_shared<DecodeCounters>();
  FileFooter footer = read_footer(*source, counters.get());
  auto indices = resolve_projection(footer.schema, projection);
  return LazyColumns(std::move(source), std::move(footer), std::move(indices), std::move(counters));
}

LazyColumns open_lazy(std::shared_ptr<const ByteSource> source) {
  auto counters = std::make_shared<DecodeCounters>();
  FileFooter footer = read_footer(*source, counters.get());
  std::vector<size_t> all(footer.schema.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return LazyColumns(std::move(source), std::move(footer), std::move(all), std::move(counters));
}

PlainColumns materialize(const LazyColumns& lazy, const BitVector& bv) {
  if (bv.size() != lazy.row_count()) {
    fail(ErrorCode::kShapeError, "bit vector has " + std::to_string(bv.size()) + " bits for " +
                                     std::to_string(lazy.row_count()) + " rows");
  }
  const auto& footer = lazy.footer();
  const size_t ncols = lazy.projection().size();
  const size_t nbatches = footer.batches.size();
  std::vector<std::vector<uint32_t>> rows(nbatches);
  for (size_t b = 0; b < nbatches; ++b) {
    const auto& batch = footer.batches[b];
    rows[b] = bv.slice(batch.first_row, batch.first_row + batch.row_count).set_positions();
  }
  std::vector<ColumnVector> parts(ncols * nbatches);
  for (size_t c = 0; c < ncols; ++c) {
    for (size_t b = 0; b < nbatches; ++b) parts[c * nbatches + b] = ColumnVector(lazy.schema().field(c).type);
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (size_t k = 0; k < parts.size(); ++k) {
    try {
      const size_t c = k / nbatches;
      const size_t b = k % nbatches;
      if (rows[b].empty()) {
        lazy.counters().add_chunk_skipped();
        continue;
      }
      ChunkReader reader = lazy.chunk(b, lazy.projection()[c]);
      lazy.counters().add_chunk_opened();
      gather_chunk_into(reader, rows[b], parts[k]);
    } catch (...) {
#pragma omp critical(colf_materialize_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  PlainColumns out;
  out.schema = lazy.schema();
  out.row_count = bv.popcount();
  for (size_t c = 0; c < ncols; ++c) {
    ColumnVector col(lazy.schema().field(c).type);
    col.reserve(out.row_count);
    for (size_t b = 0; b < nbatches; ++b) col.append_column(parts[c * nbatches + b]);
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace colf
