#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "colf/memrep.hpp"
#include "test_support.hpp"

using namespace colf;
using namespace colf::testing;

namespace {

/// Quantization applied by ScaledInt is the only lossy step; these tests avoid it.
WriteOptions random_options(Rng& rng) {
  WriteOptions o;
  const std::vector<std::string> policies = {"parquet-like", "orc-like", "arrow-like", "arrow-like-dict"};
  o.policy = policies[rng() % policies.size()];
  o.codec = static_cast<CodecKind>(rng() % 3);
  o.batch_rows = static_cast<uint32_t>(500 + rng() % 6000);
  return o;
}

}  // namespace

TEST(Container, RoundTripRandomTables) {
  Rng rng(2024);
  for (int iter = 0; iter < 30; ++iter) {
    Table t = random_table(rng, 1 + rng() % 15000, 1 + rng() % 6);
    WriteOptions o = random_options(rng);
    auto src = write_to_memory(t, o);
    LoadResult r = load_plain(src, all_column_names(t.schema));
    ASSERT_EQ(r.table, t) << "iteration " << iter << " policy " << o.policy;
  }
}

TEST(Container, FooterRoundTripAndLayout) {
  Rng rng(1);
  Table t = random_table(rng, 10000, 4);
  std::vector<uint8_t> bytes;
  WriteOptions o;
  o.batch_rows = 3000;
  FileFooter f = write_table(t.schema, t, o, bytes);
  EXPECT_EQ(std::memcmp(bytes.data(), "COLF", 4), 0);
  EXPECT_EQ(std::memcmp(bytes.data() + bytes.size() - 4, "COLF", 4), 0);
  EXPECT_EQ(deserialize_footer(serialize_footer(f)), f);
  MemorySource src(bytes);
  EXPECT_EQ(read_footer(src), f);
  ASSERT_EQ(f.batches.size(), 4u);
  EXPECT_EQ(f.batches[3].row_count, 1000u);
  for (const auto& b : f.batches) {
    for (const auto& c : b.chunks) {
      EXPECT_EQ(c.data_pages.size(), (b.row_count + kPageValues - 1) / kPageValues);
      EXPECT_EQ(c.presence_page.has_value(), c.null_count > 0);
    }
  }
}

TEST(Container, DeterministicBytes) {
  Rng a(99), b(99);
  Table ta = random_table(a, 5000, 5), tb = random_table(b, 5000, 5);
  WriteOptions o;
  o.codec = CodecKind::kDeflateLike;
  std::vector<uint8_t> x, y;
  write_table(ta.schema, ta, o, x);
  write_table(tb.schema, tb, o, y);
  EXPECT_EQ(x, y);
}

TEST(Container, FooterOnlyReadTouchesNoPages) {
  Rng rng(5);
  Table t = random_table(rng, 20000, 3);
  auto src = write_to_memory(t);
  DecodeCounters counters;
  read_footer(*src, &counters);
  DecodeStats s = counters.snapshot();
  EXPECT_EQ(s.bytes_read, 0u);
  EXPECT_EQ(s.pages_read, 0u);
  EXPECT_GT(s.footer_bytes_read, 0u);
}

TEST(Container, RejectsBadMagicAndTruncation) {
  Rng rng(5);
  Table t = random_table(rng, 1000, 2);
  std::vector<uint8_t> bytes;
  write_table(t.schema, t, {}, bytes);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_COLF_ERROR(read_footer(MemorySource(bad_magic)), ErrorCode::kNotColf);
  auto bad_tail = bytes;
  bad_tail.back() = 'X';
  EXPECT_COLF_ERROR(read_footer(MemorySource(bad_tail)), ErrorCode::kNotColf);
  EXPECT_COLF_ERROR(read_footer(MemorySource(std::vector<uint8_t>{'C', 'O'})), ErrorCode::kNotColf);

  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_COLF_ERROR(read_footer(MemorySource(bad_version)), ErrorCode::kNotColf);

  auto huge_len = bytes;
  const uint32_t len = 0x7fffffff;
  std::memcpy(huge_len.data() + huge_len.size() - 8, &len, 4);
  EXPECT_COLF_ERROR(read_footer(MemorySource(huge_len)), ErrorCode::kCorruptFile);

  // Drop bytes from the middle of the footer so the length no longer describes it.
  auto truncated = bytes;
  truncated.erase(truncated.end() - 20, truncated.end() - 12);
  EXPECT_COLF_ERROR(read_footer(MemorySource(truncated)), ErrorCode::kCorruptFile);

  std::vector<uint8_t> tiny = {'C', 'O', 'L', 'F', 1, 0, 'C', 'O', 'L', 'F'};
  EXPECT_COLF_ERROR(read_footer(MemorySource(tiny)), ErrorCode::kCorruptFile);
}

TEST(Container, CorruptPagePayloadDetected) {
  Table t;
  t.schema = Schema({Field{"x", ColumnType::int64(), false}});
  t.columns.emplace_back(ColumnType::int64());
  for (int i = 0; i < 1000; ++i) t.columns[0].push_i64(i % 10);
  t.row_count = 1000;
  std::vector<uint8_t> bytes;
  WriteOptions o;
  o.codec = CodecKind::kLz4Like;
  o.column_encodings["x"] = EncodingKind::plain();
  FileFooter f = write_table(t.schema, t, o, bytes);
  const auto& page = f.batches[0].chunks[0].data_pages[0].ref;
  bytes[page.offset + kPageHeaderBytes + 3] ^= 0xff;
  bytes[page.offset + kPageHeaderBytes + 4] ^= 0xff;
  auto src = std::make_shared<MemorySource>(bytes);
  try {
    LoadResult r = load_plain(src, {"x"});
    EXPECT_NE(r.table, t);
  } catch (const ColfError& e) {
    EXPECT_TRUE(e.code() == ErrorCode::kCorruptBlock || e.code() == ErrorCode::kCorruptChunk) << e.what();
  }
}

TEST(Container, WriteValidatesInput) {
  Table t;
  t.schema = Schema({Field{"x", ColumnType::int32(), false}});
  t.columns.emplace_back(ColumnType::int32());
  t.columns[0].append_null();
  t.row_count = 1;
  std::vector<uint8_t> out;
  EXPECT_COLF_ERROR(write_table(t.schema, t, {}, out), ErrorCode::kTypeError);
  t.columns[0] = ColumnVector(ColumnType::int32());
  t.columns[0].push_i32(1);
  WriteOptions bad;
  bad.batch_rows = 0;
  EXPECT_COLF_ERROR(write_table(t.schema, t, bad, out), ErrorCode::kConfigError);
  bad = {};
  bad.policy = "nope";
  EXPECT_COLF_ERROR(write_table(t.schema, t, bad, out), ErrorCode::kConfigError);
  bad = {};
  bad.column_encodings["x"] = EncodingKind::scaled_int(2);
  EXPECT_COLF_ERROR(write_table(t.schema, t, bad, out), ErrorCode::kConfigError);
  EXPECT_COLF_ERROR(write_table(Schema(), make_empty_table(Schema()), {}, out), ErrorCode::kSchemaError);
}

TEST(Container, EmptyTableRoundTrips) {
  Schema s({Field{"x", ColumnType::utf8()}});
  Table t = make_empty_table(s);
  auto src = write_to_memory(t);
  EXPECT_EQ(read_footer(*src).batches.size(), 0u);
  EXPECT_EQ(load_plain(src, {"x"}).table, t);
}

TEST(Container, FileRoundTripAndIoErrors) {
  Rng rng(3);
  Table t = random_table(rng, 3000, 3);
  const auto path = std::filesystem::temp_directory_path() / "colf_container_test.colf";
  write_table_file(t.schema, t, {}, path);
  auto src = std::make_shared<MappedFileSource>(path);
  EXPECT_EQ(load_plain(src, all_column_names(t.schema)).table, t);
  std::filesystem::remove(path);
  EXPECT_COLF_ERROR(MappedFileSource("/nonexistent/file.colf"), ErrorCode::kIoError);
  EXPECT_COLF_ERROR(write_table_file(t.schema, t, {}, "/nonexistent/dir/x.colf"), ErrorCode::kIoError);
}

TEST(Container, PageStreamYieldsPagesInOrder) {
  Rng rng(8);
  Table t = random_table(rng, 10000, 1);
  auto src = write_to_memory(t);
  FileFooter f = read_footer(*src);
  DecodeCounters counters;
  PageStream stream = scan_pages(*src, f, 0, 0, &counters);
  ColumnVector all(t.columns[0].type());
  size_t expect = 0;
  while (auto item = stream.next()) {
    EXPECT_EQ(item->page_index, expect++);
    all.append_column(item->values);
  }
  EXPECT_EQ(all, t.columns[0]);
  EXPECT_EQ(counters.snapshot().values_decoded, 10000u);
}

TEST(Container, ReadChunkMatchesEncoder) {
  Rng rng(10);
  Table t = random_table(rng, 5000, 2);
  auto src = write_to_memory(t);
  FileFooter f = read_footer(*src);
  for (size_t c = 0; c < 2; ++c) {
    EncodedChunk chunk = read_chunk(*src, f, 0, c);
    EXPECT_EQ(decode_chunk(chunk), t.columns[c]);
  }
  EXPECT_COLF_ERROR(read_chunk(*src, f, 5, 0), ErrorCode::kIndexError);
}

// ---------------------------------------------------------------------------
// memrep

namespace {

Table wide_table(size_t rows, size_t cols) {
  Rng rng(17);
  std::vector<Field> fields;
  Table t;
  for (size_t c = 0; c < cols; ++c) {
    fields.push_back(Field{"k" + std::to_string(c), c % 2 ? ColumnType::utf8() : ColumnType::int64(), true});
    ColumnShape shape;
    shape.null_prob = 0.05;
    shape.cardinality = 20;
    t.columns.push_back(random_column(fields.back().type, rows, rng, shape));
  }
  t.schema = Schema(std::move(fields));
  t.row_count = rows;
  return t;
}

}  // namespace

TEST(Memrep, ProjectionDecodesOnlyThatColumn) {
  Table t = wide_table(50000, 34);
  auto src = write_to_memory(t);
  LoadResult r = load_plain(src, {"k3"});
  EXPECT_EQ(r.stats.values_decoded, 50000u);
  EXPECT_EQ(r.table.columns.size(), 1u);
  EXPECT_EQ(r.table.columns[0], t.columns[3]);
  LoadResult none = load_plain(src, {});
  EXPECT_EQ(none.table.columns.size(), 0u);
  EXPECT_EQ(none.table.row_count, 50000u);
  EXPECT_EQ(none.stats.values_decoded, 0u);
  EXPECT_COLF_ERROR(load_plain(src, {"missing"}), ErrorCode::kNameError);
}

TEST(Memrep, OpenLazyReadsNoPages) {
  Table t = wide_table(20000, 4);
  auto src = write_to_memory(t);
  LazyColumns lazy = open_lazy(src, {"k0", "k1"});
  EXPECT_EQ(lazy.stats().pages_read, 0u);
  EXPECT_EQ(lazy.stats().bytes_read, 0u);
  EXPECT_COLF_ERROR(open_lazy(src, {"nope"}), ErrorCode::kNameError);
}

TEST(Memrep, SingleValueReadsAtMostThreePages) {
  Table t = wide_table(20000, 4);
  auto src = write_to_memory(t);
  LazyColumns lazy = open_lazy(src, {"k1"});
  const Value v = lazy.value_at(0, 12345);
  EXPECT_EQ(v, t.columns[1].get(12345));
  EXPECT_LE(lazy.stats().pages_read, 3u);
  EXPECT_EQ(lazy.stats().values_decoded, 1u);
}

TEST(Memrep, MaterializeDecodesExactlyPopcount) {
  Table t = wide_table(200000, 2);
  WriteOptions o;
  o.batch_rows = 65536;
  auto src = write_to_memory(t, o);
  Rng rng(2);
  for (double s : {0.0, 0.01, 0.3, 1.0}) {
    LazyColumns lazy = open_lazy(src, {"k0", "k1"});
    BitVector bv(t.row_count);
    std::bernoulli_distribution pick(s);
    for (size_t i = 0; i < t.row_count; ++i) bv.assign(i, pick(rng));
    PlainColumns out = materialize(lazy, bv);
    EXPECT_EQ(lazy.stats().values_decoded, 2 * bv.popcount()) << s;
    EXPECT_EQ(out.row_count, bv.popcount());
    const auto rows = bv.set_positions();
    EXPECT_EQ(out.columns[0], t.columns[0].gather(rows));
    EXPECT_EQ(out.columns[1], t.columns[1].gather(rows));
  }
  LazyColumns lazy = open_lazy(src, {"k0"});
  EXPECT_COLF_ERROR(materialize(lazy, BitVector(5)), ErrorCode::kShapeError);
}

TEST(Memrep, LoadPlainEqualsFullMaterialize) {
  Rng rng(31);
  for (int iter = 0; iter < 10; ++iter) {
    Table t = random_table(rng, 1 + rng() % 20000, 1 + rng() % 5);
    auto src = write_to_memory(t, random_options(rng));
    const auto names = all_column_names(t.schema);
    LazyColumns lazy = open_lazy(src, names);
    EXPECT_EQ(materialize(lazy, BitVector(t.row_count, true)), load_plain(src, names).table);
  }
}
