#include "colf/container.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <fstream>

#include "byte_io.hpp"

namespace colf {

using detail::ByteReader;
using detail::ByteWriter;

std::span<const uint8_t> MemorySource::read(uint64_t offset, uint64_t len) const {
  if (offset > bytes_.size() || len > bytes_.size() - offset) {
    fail(ErrorCode::kCorruptFile, "read past end of file");
  }
  return std::span<const uint8_t>(bytes_).subspan(offset, len);
}

MappedFileSource::MappedFileSource(const std::filesystem::path& path) {
  int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) fail(ErrorCode::kIoError, "cannot open " + path.string() + ": " + std::strerror(errno));
  struct stat st {};
  if (::fstat(fd, &st) != 0 || !S_ISREG(st.st_mode)) {
    ::close(fd);
    fail(ErrorCode::kIoError, "cannot stat regular file " + path.string());
  }
  size_ = static_cast<uint64_t>(st.st_size);
  if (size_ > 0) {
    void* p = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd, 0);
    if (p == MAP_FAILED) {
      ::close(fd);
      fail(ErrorCode::kIoError, "cannot map " + path.string());
    }
    data_ = static_cast<const uint8_t*>(p);
  }
  ::close(fd);
}

MappedFileSource::~MappedFileSource() {
  if (data_) ::munmap(const_cast<uint8_t*>(data_), size_);
}

std::span<const uint8_t> MappedFileSource::read(uint64_t offset, uint64_t len) const {
  if (offset > size_ || len > size_ - offset) fail(ErrorCode::kCorruptFile, "read past end of file");
  return {data_ + offset, len};
}

uint64_t ChunkMeta::stored_bytes() const {
  uint64_t n = 0;
  if (dict_page) n += dict_page->length;
  if (presence_page) n += presence_page->length;
  for (const auto& p : data_pages) n += p.ref.length;
  return n;
}

// ---------------------------------------------------------------------------
// Footer serialization

namespace {

void put_value(ByteWriter& w, const ColumnType& t, const Value& v) {
  switch (t.id) {
    case TypeId::kInt32: w.put<int32_t>(v.as_i32()); break;
    case TypeId::kInt64: w.put<int64_t>(v.as_i64()); break;
    case TypeId::kFloat64: w.put<double>(v.as_f64()); break;
    case TypeId::kBool: w.put_u8(v.as_bool() ? 1 : 0); break;
    case TypeId::kUtf8: w.put_string(v.as_str()); break;
    case TypeId::kFixedVector:
      for (double x : v.as_vec()) w.put<double>(x);
      break;
  }
}

Value get_value(ByteReader& r, const ColumnType& t) {
  switch (t.id) {
    case TypeId::kInt32: return Value::i32(r.get<int32_t>());
    case TypeId::kInt64: return Value::i64(r.get<int64_t>());
    case TypeId::kFloat64: return Value::f64(r.get<double>());
    case TypeId::kBool: {
      uint8_t b = r.get_u8();
      if (b > 1) r.corrupt("bad bool in footer");
      return Value::boolean(b == 1);
    }
    case TypeId::kUtf8: return Value::str(r.get_string());
    case TypeId::kFixedVector: {
      std::vector<double> v(t.dim);
      for (auto& x : v) x = r.get<double>();
      return Value::vec(std::move(v));
    }
  }
  r.corrupt("bad type");
}

void put_zone_map(ByteWriter& w, const ColumnType& t, const ZoneMap& z) {
  w.put<uint64_t>(z.row_count);
  w.put<uint64_t>(z.null_count);
  uint8_t flags = (z.min ? 1 : 0) | (z.min_truncated ? 2 : 0) | (z.max_truncated ? 4 : 0);
  w.put_u8(flags);
  if (z.min) {
    put_value(w, t, *z.min);
    put_value(w, t, *z.max);
  }
}

ZoneMap get_zone_map(ByteReader& r, const ColumnType& t) {
  ZoneMap z;
  z.row_count = r.get<uint64_t>();
  z.null_count = r.get<uint64_t>();
  const uint8_t flags = r.get_u8();
  if (flags > 7) r.corrupt("bad zone map flags");
  z.min_truncated = flags & 2;
  z.max_truncated = flags & 4;
  if (flags & 1) {
    z.min = get_value(r, t);
    z.max = get_value(r, t);
  }
  if (z.null_count > z.row_count || (z.min.has_value() == (z.null_count == z.row_count))) {
    r.corrupt("inconsistent zone map");
  }
  return z;
}

void put_page_ref(ByteWriter& w, const std::optional<PageRef>& ref) {
  w.put_u8(ref ? 1 : 0);
  if (ref) {
    w.put<uint64_t>(ref->offset);
    w.put<uint32_t>(ref->length);
  }
}

std::optional<PageRef> get_page_ref(ByteReader& r) {
  const uint8_t has = r.get_u8();
  if (has > 1) r.corrupt("bad page reference flag");
  if (!has) return std::nullopt;
  PageRef ref;
  ref.offset = r.get<uint64_t>();
  ref.length = r.get<uint32_t>();
  return ref;
}

}  // namespace

std::vector<uint8_t> serialize_footer(const FileFooter& f) {
  std::vector<uint8_t> out;
  ByteWriter w(out);
  w.put<uint16_t>(f.version);
  w.put_string(f.policy);
  w.put_u8(static_cast<uint8_t>(f.codec));
  w.put<uint32_t>(static_cast<uint32_t>(f.schema.size()));
  for (const auto& field : f.schema.fields()) {
    w.put_string(field.name);
    w.put_u8(static_cast<uint8_t>(field.type.id));
    w.put<uint32_t>(field.type.dim);
    w.put_u8(field.nullable ? 1 : 0);
  }
  w.put<uint64_t>(f.row_count);
  w.put<uint32_t>(static_cast<uint32_t>(f.batches.size()));
  for (const auto& b : f.batches) {
    w.put<uint64_t>(b.first_row);
    w.put<uint32_t>(b.row_count);
    for (size_t c = 0; c < b.chunks.size(); ++c) {
      const auto& m = b.chunks[c];
      const auto& type = f.schema.field(c).type;
      w.put_u8(static_cast<uint8_t>(m.encoding.tag));
      w.put_u8(m.encoding.width);
      w.put<int64_t>(m.encoding.reference);
      w.put_u8(m.encoding.order_preserving ? 1 : 0);
      w.put_u8(m.encoding.scale);
      w.put_u8(static_cast<uint8_t>(m.codec));
      w.put<uint64_t>(m.null_count);
      put_zone_map(w, type, m.zone_map);
      put_page_ref(w, m.dict_page);
      put_page_ref(w, m.presence_page);
      w.put<uint32_t>(static_cast<uint32_t>(m.data_pages.size()));
      for (const auto& p : m.data_pages) {
        w.put<uint64_t>(p.ref.offset);
        w.put<uint32_t>(p.ref.length);
        w.put<uint32_t>(p.value_count);
        put_zone_map(w, type, p.zone_map);
      }
    }
  }
  return out;
}

FileFooter deserialize_footer(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::kCorruptFile);
  FileFooter f;
  f.version = r.get<uint16_t>();
  if (f.version != kFormatVersion) r.corrupt("footer version disagrees with header");
  f.policy = r.get_string();
  const uint8_t codec = r.get_u8();
  if (codec > 2) r.corrupt("bad codec id");
  f.codec = static_cast<CodecKind>(codec);
  const uint32_t ncols = r.get<uint32_t>();
  if (ncols > r.remaining()) r.corrupt("column count exceeds footer");
  std::vector<Field> fields;
  for (uint32_t i = 0; i < ncols; ++i) {
    Field field;
    field.name = r.get_string();
    const uint8_t id = r.get_u8();
    const uint32_t dim = r.get<uint32_t>();
    if (id < 1 || id > 6) r.corrupt("bad column type");
    field.type = ColumnType{static_cast<TypeId>(id), dim};
    if ((field.type.id == TypeId::kFixedVector) != (dim > 0)) r.corrupt("bad vector dimension");
    const uint8_t nullable = r.get_u8();
    if (nullable > 1) r.corrupt("bad nullable flag");
    field.nullable = nullable == 1;
    fields.push_back(std::move(field));
  }
  try {
    f.schema = Schema(std::move(fields));
  } catch (const ColfError& e) {
    r.corrupt(std::string("invalid schema: ") + e.what());
  }
  f.row_count = r.get<uint64_t>();
  const uint32_t nbatches = r.get<uint32_t>();
  if (nbatches > r.remaining()) r.corrupt("batch count exceeds footer");
  for (uint32_t b = 0; b < nbatches; ++b) {
    RowBatchMeta batch;
    batch.first_row = r.get<uint64_t>();
    batch.row_count = r.get<uint32_t>();
    for (uint32_t c = 0; c < ncols; ++c) {
      const auto& type = f.schema.field(c).type;
      ChunkMeta m;
      const uint8_t tag = r.get_u8();
      if (tag > 6) r.corrupt("bad encoding tag");
      m.encoding.tag = static_cast<EncodingTag>(tag);
      m.encoding.width = r.get_u8();
      m.encoding.reference = r.get<int64_t>();
      m.encoding.order_preserving = r.get_u8() != 0;
      m.encoding.scale = r.get_u8();
      if (!encoding_supports(m.encoding, type) || m.encoding.width > 64) r.corrupt("encoding does not fit column");
      const uint8_t chunk_codec = r.get_u8();
      if (chunk_codec > 2) r.corrupt("bad codec id");
      m.codec = static_cast<CodecKind>(chunk_codec);
      m.null_count = r.get<uint64_t>();
      m.zone_map = get_zone_map(r, type);
      m.dict_page = get_page_ref(r);
      m.presence_page = get_page_ref(r);
      const uint32_t npages = r.get<uint32_t>();
      if (npages > r.remaining()) r.corrupt("page count exceeds footer");
      for (uint32_t p = 0; p < npages; ++p) {
        DataPageMeta page;
        page.ref.offset = r.get<uint64_t>();
        page.ref.length = r.get<uint32_t>();
        page.value_count = r.get<uint32_t>();
        page.zone_map = get_zone_map(r, type);
        m.data_pages.push_back(std::move(page));
      }
      batch.chunks.push_back(std::move(m));
    }
    f.batches.push_back(std::move(batch));
  }
  if (!r.done()) r.corrupt("trailing bytes in footer");
  return f;
}

namespace {

void validate_footer(const FileFooter& f, uint64_t data_begin, uint64_t data_end) {
  auto bad = [](const std::string& what) { fail(ErrorCode::kCorruptFile, what); };
  uint64_t rows = 0;
  uint64_t last_end = data_begin;
  auto check_ref = [&](const PageRef& ref) {
    if (ref.length < kPageHeaderBytes || ref.offset < last_end || ref.offset > data_end ||
        ref.length > data_end - ref.offset) {
      bad("page offsets overlap or leave the data region");
    }
    last_end = ref.offset + ref.length;
  };
  for (const auto& b : f.batches) {
    if (b.first_row != rows || b.row_count == 0) bad("row batch boundaries are inconsistent");
    rows += b.row_count;
    for (const auto& m : b.chunks) {
      if (m.dict_page) check_ref(*m.dict_page);
      if (m.presence_page) check_ref(*m.presence_page);
      if (m.encoding.uses_dictionary() != m.dict_page.has_value()) bad("dictionary page mismatch");
      if ((m.null_count > 0) != m.presence_page.has_value() || m.null_count > b.row_count) {
        bad("presence page mismatch");
      }
      uint64_t values = 0;
      for (size_t p = 0; p < m.data_pages.size(); ++p) {
        const auto& page = m.data_pages[p];
        check_ref(page.ref);
        const uint64_t expect = std::min<uint64_t>(kPageValues, b.row_count - std::min<uint64_t>(values, b.row_count));
        if (page.value_count != expect) bad("page value counts do not tile the batch");
        values += page.value_count;
      }
      if (values != b.row_count) bad("page value counts do not sum to the batch row count");
    }
  }
  if (rows != f.row_count) bad("batch row counts do not sum to the table row count");
}

std::vector<uint8_t> page_header(const CompressedBlock& block, uint32_t value_count) {
  std::vector<uint8_t> out;
  ByteWriter w(out);
  w.put_u8(static_cast<uint8_t>(static_cast<uint8_t>(block.codec) | (block.raw_fallback ? 0x80 : 0)));
  w.put<uint32_t>(block.uncompressed_len);
  w.put<uint32_t>(block.compressed_len);
  w.put<uint16_t>(static_cast<uint16_t>(value_count));
  return out;
}

PageRef append_page(std::vector<uint8_t>& sink, std::span<const uint8_t> payload, uint32_t value_count,
                    CodecKind codec) {
  CompressedBlock block = compress(payload, codec);
  PageRef ref{sink.size(), static_cast<uint32_t>(kPageHeaderBytes + block.payload.size())};
  auto header = page_header(block, value_count);
  sink.insert(sink.end(), header.begin(), header.end());
  sink.insert(sink.end(), block.payload.begin(), block.payload.end());
  return ref;
}

void validate_input(const Schema& schema, const Table& table, const WriteOptions& options) {
  if (schema.size() == 0) fail(ErrorCode::kSchemaError, "schema needs at least one column");
  if (options.batch_rows == 0) fail(ErrorCode::kConfigError, "batch_rows must be positive");
  if (!is_known_policy(options.policy)) fail(ErrorCode::kConfigError, "unknown encoding policy '" + options.policy + "'");
  if (table.columns.size() != schema.size()) fail(ErrorCode::kTypeError, "table column count differs from schema");
  for (size_t c = 0; c < schema.size(); ++c) {
    const auto& field = schema.field(c);
    const auto& col = table.columns[c];
    if (!(col.type() == field.type)) {
      fail(ErrorCode::kTypeError, "column '" + field.name + "' has type " + col.type().to_string() +
                                      ", schema says " + field.type.to_string());
    }
    if (col.size() != table.row_count) fail(ErrorCode::kTypeError, "column '" + field.name + "' has a ragged length");
    if (!field.nullable && col.null_count() > 0) {
      fail(ErrorCode::kTypeError, "non-nullable column '" + field.name + "' contains nulls");
    }
  }
  for (const auto& [name, kind] : options.column_encodings) {
    if (!encoding_supports(kind, schema.field(schema.index_of(name)).type)) {
      fail(ErrorCode::kConfigError, "encoding " + kind.to_string() + " does not fit column '" + name + "'");
    }
  }
  for (const auto& [name, codec] : options.column_codecs) schema.index_of(name);
}

}  // namespace

FileFooter write_table(const Schema& schema, const Table& table, const WriteOptions& options,
                       std::vector<uint8_t>& sink) {
  validate_input(schema, table, options);
  sink.clear();
  sink.insert(sink.end(), kMagic, kMagic + 4);
  ByteWriter(sink).put<uint16_t>(kFormatVersion);

  FileFooter footer;
  footer.schema = schema;
  footer.policy = options.policy;
  footer.codec = options.codec;
  footer.row_count = table.row_count;

  for (uint64_t start = 0; start < table.row_count; start += options.batch_rows) {
    const uint64_t end = std::min<uint64_t>(table.row_count, start + options.batch_rows);
    RowBatchMeta batch;
    batch.first_row = start;
    batch.row_count = static_cast<uint32_t>(end - start);
    for (size_t c = 0; c < schema.size(); ++c) {
      const auto& field = schema.field(c);
      ColumnVector slice = table.columns[c].slice(start, end);
      EncodingKind kind;
      if (auto it = options.column_encodings.find(field.name); it != options.column_encodings.end()) {
        kind = it->second;
      } else {
        kind = choose_encoding(field.type, compute_stats(slice), options.policy);
      }
      EncodedChunk chunk = encode_chunk(slice, kind);
      ChunkMeta meta;
      meta.encoding = chunk.kind;
      meta.codec = options.codec;
      if (auto it = options.column_codecs.find(field.name); it != options.column_codecs.end()) meta.codec = it->second;
      meta.null_count = slice.null_count();
      meta.zone_map = zone_map_build(slice, 0, slice.size());
      if (chunk.dictionary) {
        meta.dict_page = append_page(sink, serialize_dictionary(*chunk.dictionary), 0, meta.codec);
      }
      if (meta.null_count > 0) {
        meta.presence_page = append_page(sink, chunk.presence.to_bytes(), 0, meta.codec);
      }
      for (size_t p = 0; p < chunk.pages.size(); ++p) {
        DataPageMeta page;
        page.value_count = chunk.pages[p].value_count;
        const size_t first = p * kPageValues;
        page.zone_map = zone_map_build(slice, first, first + page.value_count);
        page.ref = append_page(sink, chunk.pages[p].bytes, page.value_count, meta.codec);
        meta.data_pages.push_back(std::move(page));
      }
      batch.chunks.push_back(std::move(meta));
    }
    footer.batches.push_back(std::move(batch));
  }

  auto footer_bytes = serialize_footer(footer);
  sink.insert(sink.end(), footer_bytes.begin(), footer_bytes.end());
  ByteWriter(sink).put<uint32_t>(static_cast<uint32_t>(footer_bytes.size()));
  sink.insert(sink.end(), kMagic, kMagic + 4);
  return footer;
}

FileFooter write_table_file(const Schema& schema, const Table& table, const WriteOptions& options,
                            const std::filesystem::path& path) {
  std::vector<uint8_t> bytes;
  FileFooter footer = write_table(schema, table, options, bytes);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) fail(ErrorCode::kIoError, "failed writing " + path.string());
  return footer;
}

FileFooter read_footer(const ByteSource& source, DecodeCounters* counters) {
  const uint64_t size = source.size();
  constexpr uint64_t kFixed = 4 + 2 + 4 + 4;
  if (size < 8) fail(ErrorCode::kNotColf, "file too small to be COLF");
  auto head = source.read(0, 4);
  auto tail = source.read(size - 4, 4);
  if (std::memcmp(head.data(), kMagic, 4) != 0 || std::memcmp(tail.data(), kMagic, 4) != 0) {
    fail(ErrorCode::kNotColf, "missing COLF magic");
  }
  if (size < kFixed) fail(ErrorCode::kCorruptFile, "file truncated");
  const uint16_t version = detail::load_le<uint16_t>(source.read(4, 2).data());
  if (version != kFormatVersion) fail(ErrorCode::kNotColf, "unsupported format version " + std::to_string(version));
  const uint32_t footer_len = detail::load_le<uint32_t>(source.read(size - 8, 4).data());
  if (footer_len > size - kFixed) fail(ErrorCode::kCorruptFile, "footer length points past the file");
  const uint64_t footer_start = size - 8 - footer_len;
  auto bytes = source.read(footer_start, footer_len);
  if (counters) counters->add_footer_bytes(footer_len + 14);
  FileFooter footer = deserialize_footer(bytes);
  validate_footer(footer, 6, footer_start);
  return footer;
}

// ---------------------------------------------------------------------------
// Chunk access

ChunkReader::ChunkReader(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                         DecodeCounters* counters)
    : source_(source), counters_(counters) {
  if (batch >= footer.batches.size()) fail(ErrorCode::kIndexError, "batch " + std::to_string(batch) + " out of range");
  if (column >= footer.schema.size()) fail(ErrorCode::kIndexError, "column " + std::to_string(column) + " out of range");
  meta_ = &footer.batches[batch].chunks[column];
  type_ = footer.schema.field(column).type;
  row_count_ = footer.batches[batch].row_count;
}

std::vector<uint8_t> ChunkReader::read_page(const PageRef& ref, uint32_t* value_count) {
  auto raw = source_.read(ref.offset, ref.length);
  if (counters_) counters_->add_page(ref.length);
  ByteReader r(raw, ErrorCode::kCorruptBlock);
  const uint8_t flags = r.get_u8();
  CompressedBlock block;
  if ((flags & 0x7f) > 2) r.corrupt("unknown codec id");
  block.codec = static_cast<CodecKind>(flags & 0x7f);
  block.raw_fallback = (flags & 0x80) != 0;
  block.uncompressed_len = r.get<uint32_t>();
  block.compressed_len = r.get<uint32_t>();
  const uint16_t count = r.get<uint16_t>();
  auto payload = r.get_bytes(block.compressed_len);
  if (!r.done()) r.corrupt("page length disagrees with its header");
  block.payload.assign(payload.begin(), payload.end());
  if (value_count) *value_count = count;
  return decompress(block);
}

const Dictionary* ChunkReader::dictionary() {
  if (!dictionary_loaded_) {
    dictionary_loaded_ = true;
    if (meta_->dict_page) dictionary_ = deserialize_dictionary(type_, read_page(*meta_->dict_page, nullptr));
  }
  return dictionary_ ? &*dictionary_ : nullptr;
}

const BitVector& ChunkReader::presence() {
  if (!presence_) {
    if (meta_->presence_page) {
      auto bytes = read_page(*meta_->presence_page, nullptr);
      if (bytes.size() != (size_t{row_count_} + 7) / 8) fail(ErrorCode::kCorruptChunk, "presence page length mismatch");
      presence_ = BitVector::from_bytes(bytes, row_count_);
      if (row_count_ - presence_->popcount() != meta_->null_count) {
        fail(ErrorCode::kCorruptChunk, "presence bitmap disagrees with null count");
      }
    } else {
      presence_ = BitVector(row_count_, true);
    }
  }
  return *presence_;
}

std::vector<uint8_t> ChunkReader::page_bytes(size_t p) {
  if (p >= page_count()) fail(ErrorCode::kIndexError, "page " + std::to_string(p) + " out of range");
  uint32_t count = 0;
  auto bytes = read_page(meta_->data_pages[p].ref, &count);
  if (count != meta_->data_pages[p].value_count) fail(ErrorCode::kCorruptChunk, "page header value count mismatch");
  return bytes;
}

ColumnVector ChunkReader::decode_page(size_t p) {
  const auto& pres = presence();
  PageFormat fmt = format();
  auto bytes = page_bytes(p);
  const uint32_t count = meta_->data_pages[p].value_count;
  ColumnVector out(type_);
  decode_page_into(fmt, bytes, count, out);
  if (out.size() != count) fail(ErrorCode::kCorruptChunk, "page decoded to the wrong length");
  const uint64_t first = page_first_row(p);
  if (meta_->presence_page) {
    for (uint32_t i = 0; i < count; ++i) {
      if (!pres.get(first + i)) out.mark_null(i);
    }
  }
  if (counters_) counters_->add_values(count);
  return out;
}

EncodedChunk read_chunk(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                        DecodeCounters* counters) {
  ChunkReader reader(source, footer, batch, column, counters);
  if (counters) counters->add_chunk_opened();
  EncodedChunk chunk;
  chunk.type = reader.type();
  chunk.kind = reader.meta().encoding;
  chunk.value_count = reader.row_count();
  if (const Dictionary* d = reader.dictionary()) chunk.dictionary = *d;
  chunk.presence = reader.presence();
  for (size_t p = 0; p < reader.page_count(); ++p) {
    chunk.pages.push_back(EncodedPage{reader.page(p).value_count, reader.page_bytes(p)});
  }
  chunk.stats.row_count = chunk.value_count;
  chunk.stats.null_count = reader.meta().null_count;
  chunk.stats.min = reader.meta().zone_map.min;
  chunk.stats.max = reader.meta().zone_map.max;
  return chunk;
}

PageStream::PageStream(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                       DecodeCounters* counters)
    : reader_(source, footer, batch, column, counters) {}

std::optional<PageItem> PageStream::next() {
  if (next_page_ >= reader_.page_count()) return std::nullopt;
  PageItem item;
  item.page_index = next_page_;
  item.meta = &reader_.page(next_page_);
  item.values = reader_.decode_page(next_page_);
  ++next_page_;
  return item;
}

PageStream scan_pages(const ByteSource& source, const FileFooter& footer, size_t batch, size_t column,
                      DecodeCounters* counters) {
  return PageStream(source, footer, batch, column, counters);
}

}  // namespace colf
