#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colf/codec.hpp"
#include "colf/column.hpp"
#include "colf/decode_stats.hpp"
#include "colf/encoding.hpp"
#include "colf/zone_map.hpp"

namespace colf {

inline constexpr char kMagic[4] = {'C', 'O', 'L', 'F'};
inline constexpr uint16_t kFormatVersion = 1;
inline constexpr uint32_t kDefaultBatchRows = 65536;
/// codec flags (uint8), uncompressed_len (uint32), compressed_len (uint32), value_count (uint16).
inline constexpr size_t kPageHeaderBytes = 11;

/// Immutable random-access bytes. Implementations must allow concurrent reads.
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual uint64_t size() const = 0;
  /// Throws kCorruptFile when the range lies outside the source.
  virtual std::span<const uint8_t> read(uint64_t offset, uint64_t len) const = 0;
};

class MemorySource final : public ByteSource {
 public:
  explicit MemorySource(std::vector<uint8_t> bytes) : bytes_(std::move(bytes)) {}
  uint64_t size() const override { return bytes_.size(); }
  std::span<const uint8_t> read(uint64_t offset, uint64_t len) const override;
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<uint8_t> bytes_;
};

/// Read-only memory mapping of a file. Throws kIoError when the file cannot be opened.
class MappedFileSource final : public ByteSource {
 public:
  explicit MappedFileSource(const std::filesystem::path& path);
  ~MappedFileSource() override;
  MappedFileSource(const MappedFileSource&) = delete;
  MappedFileSource& operator=(const MappedFileSource&) = delete;

  uint64_t size() const override { return size_; }
  std::span<const uint8_t> read(uint64_t offset, uint64_t len) const override;

 private:
  const uint8_t* data_ = nullptr;
  uint64_t size_ = 0;
};

struct PageRef {
  uint64_t offset = 0;
  uint32_t length = 0;  // header + payload
  friend bool operator==(const PageRef&, const PageRef&) = default;
};

struct DataPageMeta {
  PageRef ref;
  uint32_t value_count = 0;
  ZoneMap zone_map;
  friend bool operator==(const DataPageMeta&, const DataPageMeta&) = default;
};

struct ChunkMeta {
  EncodingKind encoding;
  CodecKind codec = CodecKind::kStore;
  ZoneMap zone_map;
  uint64_t null_count = 0;
  std::optional<PageRef> dict_page;
  std::optional<PageRef> presence_page;  // absent when the chunk has no nulls
  std::vector<DataPageMeta> data_pages;

  uint64_t stored_bytes() const;
  friend bool operator==(const ChunkMeta&, const ChunkMeta&) = default;
};

struct RowBatchMeta {
  uint64_t first_row = 0;
  uint32_t row_count = 0;
  std::vector<ChunkMeta> chunks;  // one per schema column
  friend bool operator==(const RowBatchMeta&, const RowBatchMeta&) = default;
};

struct FileFooter {
  uint16_t version = kFormatVersion;
  Schema schema;
  std::string policy;
  CodecKind codec = CodecKind::kStore;
  uint64_t row_count = 0;
  std::vector<RowBatchMeta> batches;

  friend bool operator==(const FileFooter&, const FileFooter&) = default;
};

struct WriteOptions {
  uint32_t batch_rows = kDefaultBatchRows;
  std::string policy = "parquet-like";
  CodecKind codec = CodecKind::kStore;
  /// Per-column overrides of the policy choice and the file codec.
  std::map<std::string, EncodingKind> column_encodings;
  std::map<std::string, CodecKind> column_codecs;
};

/// Writes `table` as a COLF file image. Throws kTypeError when the table does not match `schema`
/// or a non-nullable column holds nulls, kConfigError for bad options.
FileFooter write_table(const Schema& schema, const Table& table, const WriteOptions& options,
                       std::vector<uint8_t>& sink);
/// Same, into a file. Throws kIoError when the file cannot be written.
FileFooter write_table_file(const Schema& schema, const Table& table, const WriteOptions& options,
                            const std::filesystem::path& path);

std::vector<uint8_t> serialize_footer(const FileFooter& footer);
FileFooter deserialize_footer(std::span<const uint8_t> bytes);

/// Throws kNotColf for bad magic or version, kCorruptFile for truncated or inconsistent metadata.
FileFooter read_footer(const ByteSource& source, DecodeCounters* counters = nullptr);

/// Lazily loads the pages of one column chunk. Every page read is counted in `counters`.
class ChunkReader {
 public:
  /// Throws kIndexError for out-of-range batch or column.
  ChunkReader(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
              DecodeCounters* counters);

  const ChunkMeta& meta() const { return *meta_; }
  const ColumnType& type() const { return type_; }
  uint32_t row_count() const { return row_count_; }
  size_t page_count() const { return meta_->data_pages.size(); }
  const DataPageMeta& page(size_t p) const { return meta_->data_pages[p]; }
  static uint64_t page_first_row(size_t p) { return uint64_t{p} * kPageValues; }

  /// Null when the chunk is not dictionary encoded.
  const Dictionary* dictionary();
  /// Validity of every row in the chunk; all ones when the chunk has no presence page.
  const BitVector& presence();
  /// Decompressed payload of data page p.
  std::vector<uint8_t> page_bytes(size_t p);
  PageFormat format() { return PageFormat{type_, meta_->encoding, dictionary()}; }

  /// Decodes page p (values_decoded += its value count) with nulls applied.
  ColumnVector decode_page(size_t p);
  /// Records values decoded outside decode_page.
  void count_values(uint64_t n) {
    if (counters_) counters_->add_values(n);
  }
  DecodeCounters* counters() const { return counters_; }

 private:
  std::vector<uint8_t> read_page(const PageRef& ref, uint32_t* value_count);

  const ByteSource& source_;
  const ChunkMeta* meta_;
  ColumnType type_;
  uint32_t row_count_;
  DecodeCounters* counters_;
  std::optional<Dictionary> dictionary_;
  bool dictionary_loaded_ = false;
  std::optional<BitVector> presence_;
};

/// Reads and decompresses one chunk without decoding its values.
EncodedChunk read_chunk(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                        DecodeCounters* counters = nullptr);

struct PageItem {
  size_t page_index = 0;
  const DataPageMeta* meta = nullptr;
  ColumnVector values;
};

/// Streams decoded pages of one chunk in order; stopping early leaves later pages unread.
class PageStream {
 public:
  PageStream(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
             DecodeCounters* counters);
  std::optional<PageItem> next();

 private:
  ChunkReader reader_;
  size_t next_page_ = 0;
};

PageStream scan_pages(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                      DecodeCounters* counters = nullptr);

}  // namespace colf
