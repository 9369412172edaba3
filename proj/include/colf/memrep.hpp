#pragma once

#include <memory>
#include <string>
#include <vector>

#include "colf/container.hpp"

namespace colf {

/// Encoded columns of a file decoded on demand. Nothing decoded is cached, so the counters are a pure
/// function of the access pattern.
class LazyColumns {
 public:
  LazyColumns(std::shared_ptr<const ByteSource> source, FileFooter footer, std::vector<size_t> projection,
              std::shared_ptr<DecodeCounters> counters);

  const ByteSource& source() const { return *source_; }
  const std::shared_ptr<const ByteSource>& shared_source() const { return source_; }
  const FileFooter& footer() const { return footer_; }
  /// Schema indices of the projected columns, in projection order.
  const std::vector<size_t>& projection() const { return projection_; }
  /// Schema of the projected columns.
  const Schema& schema() const { return schema_; }
  uint64_t row_count() const { return footer_.row_count; }
  size_t batch_count() const { return footer_.batches.size(); }
  DecodeCounters& counters() const { return *counters_; }
  DecodeStats stats() const { return counters_->snapshot(); }

  /// Schema index of a column of the file (projected or not). Throws kNameError.
  size_t file_column(const std::string& name) const { return footer_.schema.index_of(name); }
  /// Batch holding `row` and the row offset inside it. Throws kIndexError.
  std::pair<size_t, uint64_t> locate(uint64_t row) const;
  /// Decodes the single page holding the value. `column` indexes the projection.
  Value value_at(size_t column, uint64_t row) const;

  ChunkReader chunk(size_t batch, size_t file_column) const {
    return ChunkReader(*source_, footer_, batch, file_column, counters_.get());
  }

 private:
  std::shared_ptr<const ByteSource> source_;
  FileFooter footer_;
  std::vector<size_t> projection_;
  Schema schema_;
  std::shared_ptr<DecodeCounters> counters_;
};

/// Resolves names against `schema`. Throws kNameError for unknown columns.
std::vector<size_t> resolve_projection(const Schema& schema, const std::vector<std::string>& names);
std::vector<std::string> all_column_names(const Schema& schema);

/// Reads the footer and fully decodes the projected columns.
struct LoadResult {
  PlainColumns table;
  DecodeStats stats;
};
LoadResult load_plain(std::shared_ptr<const ByteSource> source, const std::vector<std::string>& projection);
LoadResult load_plain(const LazyColumns& lazy);

/// Reads only the footer.
LazyColumns open_lazy(std::shared_ptr<const ByteSource> source, const std::vector<std::string>& projection,
                      std::shared_ptr<DecodeCounters> counters = nullptr);
LazyColumns open_lazy(std::shared_ptr<const ByteSource> source);

/// Decodes exactly the rows whose bit is set. Throws kShapeError when bv.size() != row_count.
PlainColumns materialize(const LazyColumns& lazy, const BitVector& bv);

/// Decodes one whole chunk into `out`, nulls applied.
void decode_chunk_into(ChunkReader& reader, ColumnVector& out);
/// Decodes the batch-relative ascending `rows` of one chunk into `out`, nulls applied.
void gather_chunk_into(ChunkReader& reader, std::span<const uint32_t> rows, ColumnVector& out);

}  // namespace colf
