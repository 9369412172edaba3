#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "colf/bench/gen.hpp"
#include "colf/bench/suites.hpp"
#include "colf/bitpack.hpp"
#include "colf/exec.hpp"
#include "colf/kernel.hpp"
#include "colf/stats.hpp"
#include "test_support.hpp"

using namespace colf;
using namespace colf::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

const CompareOp kOps[] = {CompareOp::kEq, CompareOp::kGt, CompareOp::kLt,
                          CompareOp::kGe, CompareOp::kLe, CompareOp::kBetween};

// ---------------------------------------------------------------------------
// 1

double quantize(double v, unsigned scale) {
  const double p = std::pow(10.0, scale);
  return static_cast<double>(static_cast<int64_t>(std::nearbyint(v * p))) / p;
}

ColumnVector expected_decode(const ColumnVector& in, const EncodingKind& kind) {
  if (kind.tag != EncodingTag::kScaledInt) return in;
  ColumnVector out(in.type());
  for (size_t i = 0; i < in.size(); ++i) {
    if (in.is_null(i)) {
      out.append_null();
    } else if (in.type().id == TypeId::kFloat64) {
      out.push_f64(quantize(in.get(i).as_f64(), kind.scale));
    } else {
      auto v = in.get(i).as_vec();
      for (auto& x : v) x = quantize(x, kind.scale);
      out.push_vec(v);
    }
  }
  return out;
}

ColumnVector finite_only(const ColumnVector& col) {
  if (col.type().id != TypeId::kFloat64) return col;
  ColumnVector out(col.type());
  for (size_t i = 0; i < col.size(); ++i) {
    if (col.is_null(i)) {
      out.append_null();
    } else {
      const double v = col.get(i).as_f64();
      out.push_f64(std::isfinite(v) ? v : 0.5);
    }
  }
  return out;
}

Outcome encoding_round_trip() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<EncodingKind> all = {
      EncodingKind::plain(),          EncodingKind::bitpack(),       EncodingKind::dict(false),
      EncodingKind::dict(true),       EncodingKind::rle(),           EncodingKind::dict_rle(false),
      EncodingKind::dict_rle(true),   EncodingKind::delta_for(),     EncodingKind::scaled_int(4)};
  auto types = scalar_types();
  types.push_back(ColumnType::fixed_vector(4));
  Rng rng(2024);
  size_t combos = 0, chunks = 0;
  for (const auto& t : types) {
    for (const auto& kind : all) {
      if (!encoding_supports(kind, t)) continue;
      ++combos;
      auto check = [&](ColumnVector col, const std::string& what) {
        if (kind.tag == EncodingTag::kScaledInt) col = finite_only(col);
        const EncodedChunk chunk = encode_chunk(col, kind);
        ++chunks;
        o.require(decode_chunk(chunk) == expected_decode(col, kind),
                  t.to_string() + " " + kind.to_string() + " " + what);
      };
      for (int i = 0; i < 1000; ++i) {
        ColumnShape shape;
        shape.null_prob = i % 3 == 0 ? 0.0 : 0.15;
        shape.cardinality = i % 2 ? 1 + rng() % 40 : 0;
        shape.max_run = i % 4 < 2 ? 30 : 1;
        if (kind.tag == EncodingTag::kBitPack) shape.int_min = 0;
        const size_t n = 1 + rng() % (i % 50 == 0 ? 9000 : 600);
        check(random_column(t, n, rng, shape), "random chunk " + std::to_string(i));
      }
      ColumnVector nulls(t);
      for (int i = 0; i < 5000; ++i) nulls.append_null();
      check(nulls, "all-null");
      ColumnShape one_shape;
      one_shape.int_min = 0;
      ColumnVector one(t);
      one.append(random_value(t, rng, one_shape));
      check(one, "single value");
      if (t.is_integer()) {
        ColumnVector wide(t);
        const bool i32 = t.id == TypeId::kInt32;
        const int64_t lo = kind.tag == EncodingTag::kBitPack ? 0 : (i32 ? INT32_MIN : INT64_MIN);
        const int64_t hi = i32 ? INT32_MAX : INT64_MAX;
        for (int i = 0; i < 5000; ++i) {
          const int64_t v = i % 2 ? hi - i : lo + i;
          wide.append(i32 ? Value::i32(static_cast<int32_t>(v)) : Value::i64(v));
        }
        check(wide, "max width");
      }
    }
  }
  const double secs = seconds_since(start);
  o.require(secs < 30, "took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = std::to_string(combos) + " type x encoding combinations, " + std::to_string(chunks) + " chunks, " + std::to_string(secs) + " s";
  return o;
}

// ---------------------------------------------------------------------------
// 2, 3

Predicate random_predicate(const Table& t, Rng& rng) {
  const size_t c = rng() % t.columns.size();
  const auto& col = t.columns[c];
  const std::string& name = t.schema.field(c).name;
  auto pick = [&]() -> Value {
    for (int tries = 0; tries < 20; ++tries) {
      const Value v = col.get(rng() % col.size());
      if (!v.is_null()) return v;
    }
    return random_value(col.type(), rng, ColumnShape{});
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

Table differential_table(Rng& rng, size_t rows) {
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

struct DifferentialOutcome {
  Outcome agree;
  Outcome sound;
};

DifferentialOutcome differential() {
  DifferentialOutcome d;
  const auto start = Clock::now();
  Rng rng(31337);
  const char* policies[] = {"parquet-like", "orc-like", "arrow-like", "arrow-like-dict"};
  const CodecKind codecs[] = {CodecKind::kStore, CodecKind::kLz4Like, CodecKind::kDeflateLike};
  size_t cases = 0, skips = 0;
  for (int ti = 0; ti < 50; ++ti) {
    const size_t rows = 500 + rng() % 20000;
    const Table t = differential_table(rng, rows);
    WriteOptions opts;
    opts.policy = policies[rng() % 4];
    opts.codec = codecs[rng() % 3];
    opts.batch_rows = static_cast<uint32_t>(1000 + rng() % 9000);
    const auto file = write_to_memory(t, opts);
    const FileFooter footer = read_footer(*file);
    for (int qi = 0; qi < 5; ++qi) {
      ++cases;
      SubexpressionQuery q;
      q.name = "case" + std::to_string(cases);
      const size_t npred = 1 + rng() % 3;
      for (size_t k = 0; k < npred; ++k) q.predicates.push_back(random_predicate(t, rng));
      for (size_t c = 0; c < t.columns.size(); ++c) {
        if (rng() % 2) q.projection.push_back(t.schema.field(c).name);
      }
      if (q.projection.empty()) q.projection.push_back("seq");
      const BitVector want = reference_filter(t, q.predicates);
      const PlainColumns want_table = reference_execute(q, t);
      for (Strategy s : all_strategies()) {
        const std::string where = "case " + std::to_string(cases) + " " + strategy_name(s);
        const FilterResult fr = filter(open_lazy(file), q.predicates, s);
        d.agree.require(fr.bits == want, where + ": bit vector differs");
        d.agree.require(eval_subexpression(q, file, s).table == want_table, where + ": result table differs");
        for (const auto& e : fr.skips) {
          ++skips;
          const auto& batch = footer.batches[e.batch];
          uint64_t begin = batch.first_row, end = batch.first_row + batch.row_count;
          if (e.page) {
            begin += *e.page * kPageValues;
            end = begin + batch.chunks[e.column].data_pages[*e.page].value_count;
          }
          const auto& col = t.columns[e.column];
          for (uint64_t i = begin; i < end; ++i) {
            d.sound.require(col.is_null(i) || !predicate_eval_scalar(e.predicate, col.get(i)),
                            where + ": pruned row " + std::to_string(i) + " satisfies " + e.predicate.to_string());
          }
        }
      }
    }
  }
  const double secs = seconds_since(start);
  d.agree.require(cases >= 200, "only " + std::to_string(cases) + " cases");
  d.agree.require(secs < 120, "took " + std::to_string(secs) + " s");
  d.sound.require(skips > 0, "no pruning happened");
  if (d.agree.pass) d.agree.detail = std::to_string(cases) + " cases x 7 strategies, " + std::to_string(secs) + " s";
  if (d.sound.pass) d.sound.detail = std::to_string(skips) + " skipped chunks/pages verified match-free";
  return d;
}

// ---------------------------------------------------------------------------
// 4

Outcome counter_laws() {
  Outcome o;
  constexpr size_t kBatches = 16;
  const size_t rows = kBatches * kDefaultBatchRows;
  Rng rng(404);
  Table t = make_empty_table(Schema({{"k", ColumnType::int64(), false}, {"s", ColumnType::utf8(), true}}));
  for (size_t i = 0; i < rows; ++i) {
    t.columns[0].push_i64(static_cast<int64_t>(rng() % 100000));
    t.columns[1].push_str("v" + std::to_string(rng() % 300));
  }
  t.row_count = rows;
  const auto file = write_to_memory(t);
  const uint64_t ncols = 2;
  std::optional<uint64_t> bulk;
  for (double s : {0.0001, 0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 1.0}) {
    BitVector bv(rows);
    std::bernoulli_distribution pick(s);
    for (size_t i = 0; i < rows; ++i) {
      if (pick(rng)) bv.set(i);
    }
    const std::string at = " at s=" + std::to_string(s);
    const PlainColumns want = apply_mask(t, bv);
    for (MaskMode m : {MaskMode::kBulk, MaskMode::kRecordSkip, MaskMode::kChunkSkip}) {
      const MaskResult r = apply_mask(open_lazy(file), bv, m);
      o.require(r.table == want, mask_mode_name(m) + " rows differ" + at);
      if (m == MaskMode::kRecordSkip) {
        o.require(r.stats.values_decoded == bv.popcount() * ncols, "record-skip values_decoded != popcount" + at);
      } else if (m == MaskMode::kBulk) {
        o.require(!bulk || *bulk == r.stats.values_decoded, "bulk values_decoded varies" + at);
        bulk = r.stats.values_decoded;
      } else if (s >= 0.001) {
        o.require(r.stats.chunks_opened == kBatches * ncols, "chunk-skip skipped a chunk" + at);
      }
    }
  }
  if (o.pass) o.detail = "16 batches, 8 selectivities, 3 modes";
  return o;
}

// ---------------------------------------------------------------------------
// 5

Outcome direct_query() {
  Outcome o;
  constexpr size_t kRows = 1'000'000;
  Rng rng(55);
  Table t = make_empty_table(Schema({{"city", ColumnType::utf8(), false}}));
  std::vector<std::string> pool;
  for (int i = 0; i < 500; ++i) pool.push_back("city-" + std::to_string(i * 7919 % 1000));
  for (size_t i = 0; i < kRows; ++i) t.columns[0].push_str(pool[rng() % pool.size()]);
  t.row_count = kRows;
  const auto file = write_to_memory(t);
  const FileFooter footer = read_footer(*file);
  for (const auto& b : footer.batches) o.require(b.chunks[0].encoding.uses_dictionary(), "column not dictionary encoded");
  const PredicateList preds = {Predicate::eq("city", Value::str(pool[17]))};

  const LazyColumns lazy = open_lazy(file, {});
  const FilterResult direct = filter(lazy, preds, Strategy::kLazyImDirect);
  const FilterResult plain = filter(lazy, preds, Strategy::kPlainFull);
  o.require(direct.bits == plain.bits, "strategies disagree");
  o.require(direct.stats.values_decoded == 0, "lazy-im-direct decoded " + std::to_string(direct.stats.values_decoded));
  o.require(plain.stats.values_decoded == kRows, "plain-full decoded " + std::to_string(plain.stats.values_decoded));
  auto time_of = [&](Strategy s) {
    return bench::median_ms(5, [&] { filter(lazy, preds, s); });
  };
  const double ratio = time_of(Strategy::kPlainFull) / time_of(Strategy::kLazyImDirect);
  o.require(ratio > 1.0, "wall-clock ratio " + std::to_string(ratio));
  if (o.pass) o.detail = "values_decoded 0 vs 1000000, wall-clock ratio " + std::to_string(ratio);
  return o;
}

// ---------------------------------------------------------------------------
// 6

Outcome kernel() {
  Outcome o;
  size_t compared = 0;
  for (unsigned w = 1; w <= 4; ++w) {
    const size_t count = 16 / w;
    for (uint32_t pattern = 0; pattern < (1u << 16); ++pattern) {
      const uint8_t bytes[2] = {static_cast<uint8_t>(pattern), static_cast<uint8_t>(pattern >> 8)};
      for (CompareOp op : kOps) {
        for (uint32_t k = 0; k <= low_mask(w); ++k) {
          const KeyPredicate kp{op, k, std::min<uint32_t>(k + 1 + pattern % 3, low_mask(w))};
          ++compared;
          if (filter_packed(bytes, count, w, kp) != filter_packed_scalar(bytes, count, w, kp)) {
            o.require(false, "width " + std::to_string(w) + " pattern " + std::to_string(pattern));
          }
        }
      }
    }
  }
  Rng rng(606);
  for (int i = 0; i < 10'000; ++i) {
    const unsigned w = 5 + rng() % 28;
    const size_t count = rng() % 1500;
    std::vector<uint64_t> keys(count);
    for (auto& k : keys) k = rng() & low_mask(w);
    std::vector<uint8_t> bytes;
    pack_bits(keys, w, bytes);
    const uint32_t a = static_cast<uint32_t>(count && rng() % 2 ? keys[rng() % count] : rng() & low_mask(w));
    const uint32_t b = static_cast<uint32_t>(rng() & low_mask(w));
    const KeyPredicate kp{kOps[rng() % 6], std::min(a, b), std::max(a, b)};
    ++compared;
    const BitVector want = filter_packed_scalar(bytes, count, w, kp);
    if (filter_packed(bytes, count, w, kp) != want || filter_packed_serial(bytes, count, w, kp) != want) {
      o.require(false, "random case " + std::to_string(i) + " width " + std::to_string(w));
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " comparisons, 0 mismatches";
  return o;
}

// ---------------------------------------------------------------------------
// 7

ColumnVector with_distinct_ratio(const ColumnType& t, size_t n, double ratio) {
  const size_t distinct = static_cast<size_t>(std::llround(ratio * double(n)));
  ColumnVector col(t);
  for (size_t i = 0; i < n; ++i) {
    const size_t v = i < distinct ? i : i % distinct;
    if (t.id == TypeId::kUtf8) {
      col.push_str("value-" + std::to_string(v));
    } else {
      col.push_i64(static_cast<int64_t>(v * 1'000'003));
    }
  }
  return col;
}

Outcome dictionary_fallback() {
  Outcome o;
  const std::vector<std::pair<std::string, ColumnType>> cases = {
      {"parquet-like", ColumnType::int64()}, {"parquet-like", ColumnType::utf8()}, {"orc-like", ColumnType::utf8()}};
  for (const auto& [policy, t] : cases) {
    const std::string what = policy + " " + t.to_string();
    const EncodingKind hk = choose_encoding(t, compute_stats(with_distinct_ratio(t, 20'000, 0.85)), policy);
    const EncodingKind lk = choose_encoding(t, compute_stats(with_distinct_ratio(t, 20'000, 0.75)), policy);
    o.require(hk.tag == EncodingTag::kPlain, what + " ratio 0.85 chose " + hk.to_string());
    o.require(lk.uses_dictionary(), what + " ratio 0.75 chose " + lk.to_string());
  }
  if (o.pass) o.detail = "0.85 -> plain, 0.75 -> dictionary: parquet-like int64 and utf8, orc-like utf8";
  return o;
}

// ---------------------------------------------------------------------------
// 8

Outcome codec_fallback() {
  Outcome o;
  Rng rng(808);
  std::vector<uint8_t> data(64 * 1024);
  for (auto& b : data) b = static_cast<uint8_t>(rng());
  for (CodecKind c : {CodecKind::kLz4Like, CodecKind::kDeflateLike}) {
    const CompressedBlock block = compress(data, c);
    o.require(block.raw_fallback, codec_name(c) + " did not fall back");
    o.require(decompress(block) == data, codec_name(c) + " round trip");
    const size_t overhead = serialize_block(block).size() - data.size();
    o.require(overhead <= 11, codec_name(c) + " overhead " + std::to_string(overhead));
  }
  // One page of random Plain int64 values.
  Table t = make_empty_table(Schema({{"x", ColumnType::int64(), false}}));
  for (size_t i = 0; i < 4096; ++i) t.columns[0].push_i64(static_cast<int64_t>(rng()));
  t.row_count = 4096;
  WriteOptions opts;
  opts.codec = CodecKind::kLz4Like;
  opts.column_encodings["x"] = EncodingKind::plain();
  const auto file = write_to_memory(t, opts);
  const FileFooter f = read_footer(*file);
  const auto& page = f.batches[0].chunks[0].data_pages[0];
  o.require(page.ref.length <= 4096 * 8 + kPageHeaderBytes, "page stored " + std::to_string(page.ref.length));
  if (o.pass) o.detail = "raw fallback, block header " + std::to_string(kBlockHeaderBytes) + " bytes, page header " +
                         std::to_string(kPageHeaderBytes) + " bytes";
  return o;
}

// ---------------------------------------------------------------------------
// 9, 11, 12

Outcome from_report(const bench::Report& r, const std::function<bool(const std::string&)>& wanted, double secs,
                    double limit) {
  Outcome o;
  size_t n = 0;
  for (const auto& c : r.checks) {
    if (!wanted(c.name)) continue;
    ++n;
    o.require(c.passed, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
  }
  o.require(n > 0, "no checks");
  if (limit > 0) o.require(secs < limit, "took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(n) + " checks";
    if (secs > 0) o.detail += ", " + std::to_string(secs) + " s";
    for (const auto& c : r.checks) {
      if (wanted(c.name) && !c.detail.empty() && c.detail.rfind("checksum", 0) != 0) o.detail += "; " + c.detail;
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// 10

Outcome container_integrity() {
  Outcome o;
  Rng rng(1010);
  for (int i = 0; i < 50; ++i) {
    const Table t = random_table(rng, 1 + rng() % 20000, 1 + rng() % 6);
    WriteOptions opts;
    opts.batch_rows = static_cast<uint32_t>(500 + rng() % 20000);
    opts.codec = static_cast<CodecKind>(rng() % 3);
    const auto file = write_to_memory(t, opts);
    o.require(load_plain(file, all_column_names(t.schema)).table == t, "table " + std::to_string(i) + " round trip");
    DecodeCounters counters;
    const FileFooter f = read_footer(*file, &counters);
    const DecodeStats s = counters.snapshot();
    o.require(s.bytes_read == 0 && s.pages_read == 0 && s.footer_bytes_read > 0, "footer read touched data");
    o.require(f.row_count == t.row_count, "footer row count");
  }
  for (int i = 0; i < 3; ++i) {
    Rng a(77 + i), b(77 + i);
    std::vector<uint8_t> x, y;
    const Table ta = random_table(a, 5000, 4), tb = random_table(b, 5000, 4);
    write_table(ta.schema, ta, {}, x);
    write_table(tb.schema, tb, {}, y);
    o.require(x == y, "output not byte-identical");
  }
  const Table t = random_table(rng, 3000, 3);
  std::vector<uint8_t> good;
  write_table(t.schema, t, {}, good);
  auto code_of = [](std::vector<uint8_t> bytes) -> std::optional<ErrorCode> {
    try {
      read_footer(MemorySource(std::move(bytes)));
    } catch (const ColfError& e) {
      return e.code();
    }
    return std::nullopt;
  };
  auto head = good;
  head[1] = 'X';
  o.require(code_of(head) == ErrorCode::kNotColf, "corrupted head magic accepted");
  auto tail = good;
  tail.back() = 'X';
  o.require(code_of(tail) == ErrorCode::kNotColf, "corrupted tail magic accepted");
  for (size_t cut : {size_t{1}, size_t{9}, good.size() / 2}) {
    auto shorter = std::vector<uint8_t>(good.begin(), good.end() - static_cast<long>(cut));
    o.require(code_of(shorter).has_value(), "truncated file accepted");
  }
  auto footer_cut = good;
  uint32_t len = 0;
  std::memcpy(&len, footer_cut.data() + footer_cut.size() - 8, 4);
  footer_cut.erase(footer_cut.end() - 8 - len / 2, footer_cut.end() - 8);
  o.require(code_of(footer_cut) == ErrorCode::kCorruptFile, "truncated footer accepted");
  if (o.pass) o.detail = "50 tables round trip, footer read 0 data bytes, deterministic, corruption rejected";
  return o;
}

void report(int n, const std::string& title, const Outcome& o, bool& all) {
  all = all && o.pass;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  bool all = true;
  report(1, "encoding round trip", encoding_round_trip(), all);
  const DifferentialOutcome d = differential();
  report(2, "strategy differential", d.agree, all);
  report(3, "pruning soundness", d.sound, all);
  report(4, "skipping counter laws", counter_laws(), all);
  report(5, "direct dictionary query counters", direct_query(), all);
  report(6, "vectorized kernel", kernel(), all);
  report(7, "dictionary fallback", dictionary_fallback(), all);
  report(8, "codec fallback", codec_fallback(), all);

  bench::SuiteConfig cfg;
  cfg.reps = 1;
  auto t = Clock::now();
  const bench::Report compression = bench::suite_compression(cfg);
  report(9, "compression trends", from_report(compression, [](const std::string& n) { return n.find("<=") != std::string::npos; },
                                              seconds_since(t), 60),
         all);
  report(10, "container integrity", container_integrity(), all);

  t = Clock::now();
  Outcome sub;
  for (CodecKind real : {CodecKind::kLz4Like, CodecKind::kDeflateLike}) {
    cfg.real_codec = real;
    const bench::Report r = bench::suite_subexpressions(cfg);
    const Outcome part = from_report(r, [](const std::string&) { return true; }, 0, 0);
    sub.require(part.pass, part.detail);
    if (part.pass && sub.detail.empty()) sub.detail = part.detail;
  }
  if (sub.pass) sub.detail += "; store, lz4 and deflate, " + std::to_string(seconds_since(t)) + " s";
  report(11, "subexpression suite", sub, all);

  cfg.real_codec = CodecKind::kLz4Like;
  t = Clock::now();
  const bench::Report vectors = bench::suite_vectors(cfg);
  report(12, "vector suite", from_report(vectors, [](const std::string&) { return true; }, seconds_since(t), 0), all);

  Outcome total;
  const double secs = seconds_since(start);
  total.require(secs < 600, "acceptance run took " + std::to_string(secs) + " s");
  if (total.pass) total.detail = "acceptance run " + std::to_string(secs) + " s";
  report(13, "runtime", total, all);
  return all ? 0 : 1;
}
