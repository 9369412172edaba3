#include <gtest/gtest.h>

#include "colf/bitpack.hpp"
#include "colf/exec.hpp"
#include "colf/kernel.hpp"
#include "test_support.hpp"

using namespace colf;
using namespace colf::testing;

namespace {

const CompareOp kOps[] = {CompareOp::kEq, CompareOp::kGt, CompareOp::kLt,
                          CompareOp::kGe, CompareOp::kLe, CompareOp::kBetween};

std::vector<uint8_t> pack(const std::vector<uint64_t>& keys, unsigned width) {
  std::vector<uint8_t> out;
  pack_bits(keys, width, out);
  return out;
}

}  // namespace

TEST(Kernel, WidthThreeEqFive) {
  std::vector<uint64_t> keys = {0, 1, 2, 3, 4, 5, 6, 7};
  auto bytes = pack(keys, 3);
  BitVector bv = filter_packed(bytes, 8, 3, KeyPredicate{CompareOp::kEq, 5, 0});
  EXPECT_EQ(bv.set_positions(), std::vector<uint32_t>{5});
  EXPECT_EQ(bv, filter_packed_scalar(bytes, 8, 3, KeyPredicate{CompareOp::kEq, 5, 0}));
}

TEST(Kernel, EmptyPage) {
  EXPECT_EQ(filter_packed({}, 0, 7, KeyPredicate{}).size(), 0u);
}

TEST(Kernel, ExhaustiveSmallWidths) {
  for (unsigned w = 1; w <= 4; ++w) {
    const size_t count = 16 / w;
    for (uint32_t pattern = 0; pattern < (1u << 16); pattern += (w == 1 ? 1 : 7)) {
      const uint8_t bytes[2] = {static_cast<uint8_t>(pattern), static_cast<uint8_t>(pattern >> 8)};
      for (CompareOp op : kOps) {
        for (uint32_t k = 0; k <= low_mask(w) + 1; ++k) {
          KeyPredicate kp{op, k, std::min<uint32_t>(k + 1, low_mask(w))};
          ASSERT_EQ(filter_packed(bytes, count, w, kp), filter_packed_scalar(bytes, count, w, kp));
        }
      }
    }
  }
}

TEST(Kernel, RandomWidthsMatchScalar) {
  Rng rng(123);
  for (int iter = 0; iter < 2000; ++iter) {
    const unsigned w = 1 + rng() % 32;
    const size_t count = rng() % 700;
    std::vector<uint64_t> keys(count);
    for (auto& k : keys) k = rng() & low_mask(w);
    auto bytes = pack(keys, w);
    const uint32_t a = static_cast<uint32_t>(count ? keys[rng() % count] : rng());
    const uint32_t b = static_cast<uint32_t>(rng() & low_mask(w));
    KeyPredicate kp{kOps[rng() % 6], std::min(a, b), std::max(a, b)};
    ASSERT_EQ(filter_packed(bytes, count, w, kp), filter_packed_scalar(bytes, count, w, kp)) << "width " << w;
    ASSERT_EQ(filter_packed_serial(bytes, count, w, kp), filter_packed_scalar(bytes, count, w, kp));
  }
}

TEST(Kernel, LargeInputParallelPathMatches) {
  Rng rng(5);
  const size_t count = 1 << 20;
  std::vector<uint64_t> keys(count);
  for (auto& k : keys) k = rng() & 1023;
  auto bytes = pack(keys, 10);
  KeyPredicate kp{CompareOp::kBetween, 100, 300};
  EXPECT_EQ(filter_packed(bytes, count, 10, kp), filter_packed_scalar(bytes, count, 10, kp));
}

TEST(Kernel, TruncatedPayloadRejected) {
  std::vector<uint8_t> bytes(3);
  EXPECT_COLF_ERROR(filter_packed(bytes, 100, 5, KeyPredicate{}), ErrorCode::kCorruptChunk);
}

// ---------------------------------------------------------------------------

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : all_strategies()) EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  EXPECT_COLF_ERROR(parse_strategy("fastest"), ErrorCode::kConfigError);
}

namespace {

Predicate random_predicate(const Table& t, Rng& rng) {
  std::vector<size_t> candidates;
  for (size_t c = 0; c < t.schema.size(); ++c) {
    if (t.schema.field(c).type.id != TypeId::kFixedVector) candidates.push_back(c);
  }
  const size_t c = candidates[rng() % candidates.size()];
  const auto& col = t.columns[c];
  const auto& name = t.schema.field(c).name;
  auto pick = [&]() {
    for (int tries = 0; tries < 20; ++tries) {
      const Value v = col.get(rng() % col.size());
      if (!v.is_null()) return v;
    }
    ColumnShape shape;
    return random_value(col.type(), rng, shape);
  };
  Value a = pick(), b = pick();
  if (compare_values(a, b) > 0) std::swap(a, b);
  switch (rng() % 6) {
    case 0: return Predicate::eq(name, a);
    case 1: return Predicate::gt(name, a);
    case 2: return Predicate::lt(name, a);
    case 3: return Predicate::ge(name, a);
    case 4: return Predicate::le(name, a);
    default: return Predicate::between(name, a, b);
  }
}

/// Sorted columns give the zone maps something to prune.
Table prunable_table(Rng& rng, size_t rows) {
  Table t = random_table(rng, rows, 3 + rng() % 3, false);
  std::vector<Field> fields = t.schema.fields();
  fields.push_back(Field{"seq", ColumnType::int64(), false});
  ColumnVector seq(ColumnType::int64());
  for (size_t i = 0; i < rows; ++i) seq.push_i64(static_cast<int64_t>(i / 3));
  t.columns.push_back(std::move(seq));
  fields.push_back(Field{"tag", ColumnType::utf8(), true});
  ColumnVector tag(ColumnType::utf8());
  for (size_t i = 0; i < rows; ++i) {
    if (rng() % 50 == 0) {
      tag.append_null();
    } else {
      tag.push_str("t" + std::to_string(i * 10 / rows));
    }
  }
  t.columns.push_back(std::move(tag));
  t.schema = Schema(std::move(fields));
  return t;
}

void expect_skips_sound(const Table& t, const FileFooter& footer, const std::vector<SkipEvent>& skips) {
  for (const auto& e : skips) {
    const auto& batch = footer.batches[e.batch];
    uint64_t begin = batch.first_row, end = batch.first_row + batch.row_count;
    if (e.page) {
      begin += *e.page * kPageValues;
      end = begin + batch.chunks[e.column].data_pages[*e.page].value_count;
    }
    const auto& col = t.columns[e.column];
    for (uint64_t i = begin; i < end; ++i) {
      ASSERT_FALSE(!col.is_null(i) && predicate_eval_scalar(e.predicate, col.get(i)))
          << "pruned row " << i << " satisfies " << e.predicate.to_string();
    }
  }
}

}  // namespace

TEST(Filter, StrategiesAgreeWithReference) {
  Rng rng(777);
  size_t pruned = 0;
  for (int iter = 0; iter < 60; ++iter) {
    Table t = prunable_table(rng, 1 + rng() % 30000);
    WriteOptions o;
    const std::vector<std::string> policies = {"parquet-like", "orc-like", "arrow-like-dict", "arrow-like"};
    o.policy = policies[rng() % policies.size()];
    o.batch_rows = static_cast<uint32_t>(1000 + rng() % 12000);
    o.codec = static_cast<CodecKind>(rng() % 3);
    if (rng() % 2) o.column_encodings["tag"] = EncodingKind::dict(true);
    auto src = write_to_memory(t, o);
    PredicateList preds;
    const size_t npreds = 1 + rng() % 3;
    for (size_t k = 0; k < npreds; ++k) preds.push_back(random_predicate(t, rng));
    if (rng() % 2) preds.push_back(Predicate::ge("seq", Value::i64(static_cast<int64_t>(rng() % (t.row_count / 3 + 1)))));
    const BitVector expect = reference_filter(t, preds);
    for (Strategy s : all_strategies()) {
      LazyColumns lazy = open_lazy(src, {});
      FilterResult r = filter(lazy, preds, s);
      ASSERT_EQ(r.bits, expect) << strategy_name(s) << " iteration " << iter;
      expect_skips_sound(t, lazy.footer(), r.skips);
      pruned += r.skips.size();
    }
    EXPECT_EQ(filter(t, preds), expect);
  }
  EXPECT_GT(pruned, 0u);
}

TEST(Filter, UnknownColumnAndBadOperand) {
  Rng rng(1);
  Table t = prunable_table(rng, 100);
  auto src = write_to_memory(t);
  LazyColumns lazy = open_lazy(src, {});
  EXPECT_COLF_ERROR(filter(lazy, {Predicate::eq("nope", Value::i64(1))}, Strategy::kLazyIm), ErrorCode::kNameError);
  EXPECT_COLF_ERROR(filter(lazy, {Predicate::eq("seq", Value::str("x"))}, Strategy::kLazyIm), ErrorCode::kTypeError);
}

namespace {

Table string_table(size_t rows, size_t cardinality) {
  Table t;
  t.schema = Schema({Field{"s", ColumnType::utf8(), false}, Field{"n", ColumnType::int64(), false}});
  t.columns = {ColumnVector(ColumnType::utf8()), ColumnVector(ColumnType::int64())};
  for (size_t i = 0; i < rows; ++i) {
    t.columns[0].push_str("value-" + std::to_string((i * 7919) % cardinality));
    t.columns[1].push_i64(static_cast<int64_t>(i % 13));
  }
  t.row_count = rows;
  return t;
}

}  // namespace

TEST(Filter, DirectEqDecodesNothing) {
  Table t = string_table(100000, 50);
  auto src = write_to_memory(t);
  const PredicateList preds = {Predicate::eq("s", Value::str("value-7"))};
  for (Strategy s : {Strategy::kLazyImDirect, Strategy::kLazyImDirectVec, Strategy::kPlainDictDirect}) {
    FilterResult r = filter(open_lazy(src, {}), preds, s);
    EXPECT_EQ(r.stats.values_decoded, 0u) << strategy_name(s);
    EXPECT_EQ(r.bits.popcount(), 2000u);
    EXPECT_FALSE(r.fallback);
  }
  FilterResult full = filter(open_lazy(src, {}), preds, Strategy::kPlainFull);
  EXPECT_EQ(full.stats.values_decoded, 100000u);
  FilterResult absent = filter(open_lazy(src, {}), {Predicate::eq("s", Value::str("value-0x"))}, Strategy::kLazyImDirect);
  EXPECT_EQ(absent.bits.popcount(), 0u);
  EXPECT_EQ(absent.stats.values_decoded, 0u);
}

TEST(Filter, DirectRangeNeedsSortedDictionary) {
  Table t = string_table(20000, 50);
  const PredicateList preds = {Predicate::gt("s", Value::str("value-3"))};
  const BitVector expect = reference_filter(t, preds);
  WriteOptions unsorted;
  unsorted.column_encodings["s"] = EncodingKind::dict(false);
  FilterResult a = filter(open_lazy(write_to_memory(t, unsorted), {}), preds, Strategy::kLazyImDirect);
  EXPECT_TRUE(a.fallback);
  EXPECT_EQ(a.bits, expect);
  WriteOptions sorted;
  sorted.column_encodings["s"] = EncodingKind::dict(true);
  FilterResult b = filter(open_lazy(write_to_memory(t, sorted), {}), preds, Strategy::kLazyImDirectVec);
  EXPECT_FALSE(b.fallback);
  EXPECT_EQ(b.stats.values_decoded, 0u);
  EXPECT_EQ(b.bits, expect);
  sorted.column_encodings["n"] = EncodingKind::plain();
  FilterResult c = filter(open_lazy(write_to_memory(t, sorted), {}), {Predicate::eq("n", Value::i64(3))},
                          Strategy::kLazyImDirect);
  EXPECT_TRUE(c.fallback);
}

TEST(Filter, ZoneMapSkipsWholeChunk) {
  Table t;
  t.schema = Schema({Field{"x", ColumnType::int32(), false}});
  t.columns = {ColumnVector(ColumnType::int32())};
  for (int i = 0; i < 20000; ++i) t.columns[0].push_i32(i < 10000 ? i % 11 : 50);
  t.row_count = 20000;
  WriteOptions o;
  o.batch_rows = 10000;
  auto src = write_to_memory(t, o);
  FilterResult r = filter(open_lazy(src, {}), {Predicate::gt("x", Value::i32(12))}, Strategy::kLazyIm);
  EXPECT_EQ(r.bits.popcount(), 10000u);
  EXPECT_EQ(r.stats.values_decoded, 10000u);
  EXPECT_EQ(r.stats.batches_skipped, 1u);
  EXPECT_EQ(r.stats.chunks_skipped + r.stats.chunks_opened, 2u);
  FilterResult c = filter(open_lazy(src, {}), {Predicate::gt("x", Value::i32(12))}, Strategy::kChunkSkip);
  EXPECT_EQ(c.stats.values_decoded, 10000u);
  EXPECT_EQ(c.stats.chunks_skipped, 1u);
}

TEST(Filter, PredicateOrderPutsMostPrunedFirst) {
  Rng rng(3);
  Table t = prunable_table(rng, 50000);
  auto src = write_to_memory(t);
  FileFooter f = read_footer(*src);
  const PredicateList preds = {Predicate::ge("seq", Value::i64(0)), Predicate::lt("seq", Value::i64(10))};
  EXPECT_EQ(predicate_order(f, preds), (std::vector<size_t>{1, 0}));
}

// ---------------------------------------------------------------------------

namespace {

BitVector random_bits(size_t n, double s, Rng& rng) {
  BitVector bv(n);
  std::bernoulli_distribution pick(s);
  for (size_t i = 0; i < n; ++i) bv.assign(i, pick(rng));
  return bv;
}

}  // namespace

TEST(ApplyMask, ModesAgreeAndObeyCounterLaws) {
  Rng rng(21);
  Table t = string_table(100000, 300);
  WriteOptions o;
  o.batch_rows = 10000;
  auto src = write_to_memory(t, o);
  for (double s : {0.0, 0.0001, 0.001, 0.05, 0.5, 1.0}) {
    const BitVector bv = random_bits(t.row_count, s, rng);
    MaskResult bulk = apply_mask(open_lazy(src, {"s", "n"}), bv, MaskMode::kBulk);
    MaskResult record = apply_mask(open_lazy(src, {"s", "n"}), bv, MaskMode::kRecordSkip);
    MaskResult chunk = apply_mask(open_lazy(src, {"s", "n"}), bv, MaskMode::kChunkSkip);
    EXPECT_EQ(record.table, bulk.table);
    EXPECT_EQ(chunk.table, bulk.table);
    EXPECT_EQ(bulk.table, apply_mask(t, bv));
    EXPECT_EQ(record.stats.values_decoded, 2 * bv.popcount());
    EXPECT_EQ(bulk.stats.values_decoded, 2 * t.row_count);
    EXPECT_LE(record.stats.values_decoded, chunk.stats.values_decoded);
    EXPECT_LE(chunk.stats.values_decoded, bulk.stats.values_decoded);
  }
  EXPECT_COLF_ERROR(apply_mask(open_lazy(src, {"s"}), BitVector(3), MaskMode::kBulk), ErrorCode::kShapeError);
}

TEST(ApplyMask, ChunkSkipSkipsEmptyBatches) {
  Table t = string_table(100000, 300);
  WriteOptions o;
  o.batch_rows = 10000;
  auto src = write_to_memory(t, o);
  BitVector bv(t.row_count);
  bv.set(5);
  bv.set(9000);
  MaskResult r = apply_mask(open_lazy(src, {"s"}), bv, MaskMode::kChunkSkip);
  EXPECT_EQ(r.stats.batches_skipped, 9u);
  EXPECT_EQ(r.stats.values_decoded, 10000u);
}

TEST(Subexpression, EveryStrategyMatchesReference) {
  Rng rng(55);
  Table t = prunable_table(rng, 40000);
  auto src = write_to_memory(t);
  const std::string c0 = t.schema.field(0).name;
  SubexpressionQuery q{"q", {c0, "seq"}, {Predicate::lt("seq", Value::i64(5000)), random_predicate(t, rng)}};
  const PlainColumns expect = reference_execute(q, t);
  for (Strategy s : all_strategies()) {
    SubexpressionResult r = eval_subexpression(q, src, s);
    EXPECT_EQ(r.table, expect) << strategy_name(s);
    EXPECT_EQ(r.load_ms.has_value(), s != Strategy::kLazyStream);
  }
  SubexpressionQuery proj{"p", {"tag"}, {}};
  for (Strategy s : all_strategies()) {
    EXPECT_EQ(eval_subexpression(proj, src, s).table, project(t, {"tag"})) << strategy_name(s);
  }
}
