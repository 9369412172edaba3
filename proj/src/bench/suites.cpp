#include "colf/bench/suites.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <random>

#include "colf/bench/csv.hpp"
#include "colf/bench/gen.hpp"
#include "colf/exec.hpp"

namespace colf::bench {

namespace {

uint64_t scaled(uint64_t rows, double scale, uint64_t floor_rows) {
  return std::max<uint64_t>(floor_rows, static_cast<uint64_t>(std::llround(static_cast<double>(rows) * scale)));
}

std::string fmt(double v) { return render_value(Value::f64(v)); }

uint32_t read_u32(std::span<const uint8_t> b, size_t at) {
  uint32_t v = 0;
  std::memcpy(&v, b.data() + at, 4);
  return v;
}

void add_page(const ByteSource& source, const PageRef& ref, Sizes& s) {
  s.compressed += ref.length;
  s.encoded += read_u32(source.read(ref.offset, kPageHeaderBytes), 1);
}

void base_metadata(Report& r, const SuiteConfig& c) {
  r.seed = c.seed;
  r.metadata = {{"scale", fmt(c.scale)},
                {"timing", "median of " + std::to_string(c.reps) + " runs after 1 warm-up, warm cache"},
                {"real_codec", codec_name(c.real_codec)}};
}

// ---------------------------------------------------------------------------
// compression

const std::vector<std::string> kPolicies = {"parquet-like", "orc-like", "arrow-like"};

TableSpec compression_spec(uint64_t rows, uint64_t seed) {
  TableSpec t;
  t.name = "compression";
  t.row_count = rows;
  t.seed = seed;
  t.columns = {
      {"int_uniform", ColumnType::int64(), Uniform{0, 1e9, std::nullopt}},
      {"int_zipf", ColumnType::int64(), Zipf{1000, 1.1, 0, 1}},
      {"int_runs", ColumnType::int64(), Runs{{Value::i64(1), Value::i64(2)}, 1000}},
      {"int_sequential", ColumnType::int64(), Sequential{1'000'000, 1}},
      {"float_uniform", ColumnType::float64(), Uniform{0, 1, std::nullopt}},
      {"float_money", ColumnType::float64(), Uniform{0, 1000, 2}},
      {"str_lowcard", ColumnType::utf8(), StringPool{16, 8, {}, {}}},
      {"str_highcard", ColumnType::utf8(), StringPool{20'000, 12, {}, {}}},
  };
  return t;
}

struct Forced {
  std::string name;
  EncodingKind kind;
};

const std::vector<Forced> kForced = {
    {"plain", EncodingKind::plain()},         {"dict", EncodingKind::dict(false)},
    {"rle", EncodingKind::rle()},             {"bitpack", EncodingKind::bitpack()},
    {"delta-for", EncodingKind::delta_for()},
};

}  // namespace

std::shared_ptr<const MemorySource> write_to_memory(const Table& table, const WriteOptions& options) {
  std::vector<uint8_t> bytes;
  write_table(table.schema, table, options, bytes);
  return std::make_shared<MemorySource>(std::move(bytes));
}

Sizes column_sizes(const ByteSource& source, const FileFooter& footer, size_t column) {
  Sizes s;
  for (const auto& batch : footer.batches) {
    const ChunkMeta& chunk = batch.chunks.at(column);
    if (chunk.dict_page) add_page(source, *chunk.dict_page, s);
    if (chunk.presence_page) add_page(source, *chunk.presence_page, s);
    for (const auto& page : chunk.data_pages) add_page(source, page.ref, s);
  }
  return s;
}

Report suite_compression(const SuiteConfig& config) {
  Report r;
  r.suite = "compression";
  base_metadata(r, config);
  const TableSpec spec = compression_spec(scaled(65'536, config.scale, 4096), config.seed);
  const Table table = gen_table(spec);
  std::vector<uint64_t> raw(table.columns.size());
  for (size_t c = 0; c < raw.size(); ++c) raw[c] = csv_bytes(table.columns[c]);
  r.metadata.push_back({"rows", std::to_string(table.row_count)});

  const std::vector<CodecKind> codecs = {CodecKind::kStore, CodecKind::kLz4Like, CodecKind::kDeflateLike};
  std::map<std::pair<std::string, CodecKind>, std::vector<Sizes>> by_file;
  bool round_trips = true;
  for (const auto& policy : kPolicies) {
    for (CodecKind codec : codecs) {
      WriteOptions opts;
      opts.policy = policy;
      opts.codec = codec;
      std::shared_ptr<const MemorySource> file;
      const double write_ms = median_ms(config.reps, [&] { file = write_to_memory(table, opts); });
      const FileFooter footer = read_footer(*file);
      LoadResult loaded;
      const double load_ms = median_ms(config.reps, [&] { loaded = load_plain(file, all_column_names(table.schema)); });
      round_trips = round_trips && loaded.table == table;

      Case whole;
      whole.name = "file/" + policy + "/" + codec_name(codec);
      whole.config = {{"policy", policy}, {"codec", codec_name(codec)}};
      whole.sizes.compressed = file->size();
      whole.stats = loaded.stats;
      whole.timings_ms = {{"write", write_ms}, {"load", load_ms}};
      whole.checksum = table_checksum(loaded.table);

      auto& sizes = by_file[{policy, codec}];
      for (size_t c = 0; c < table.columns.size(); ++c) {
        Sizes s = column_sizes(*file, footer, c);
        s.raw = raw[c];
        whole.sizes.encoded += s.encoded;
        whole.sizes.raw += s.raw;
        sizes.push_back(s);
        Case k;
        k.name = table.schema.field(c).name + "/" + policy + "/" + codec_name(codec);
        k.config = {{"column", table.schema.field(c).name},
                    {"type", table.schema.field(c).type.to_string()},
                    {"policy", policy},
                    {"codec", codec_name(codec)},
                    {"encoding", footer.batches.front().chunks[c].encoding.to_string()}};
        k.sizes = s;
        k.metrics = {{"ratio_vs_csv", double(s.compressed) / double(s.raw)}};
        r.cases.push_back(std::move(k));
      }
      r.cases.push_back(std::move(whole));
    }
  }
  r.check("every file decodes to the generated table", round_trips);

  std::map<std::string, std::map<std::string, Sizes>> forced;
  for (const auto& f : kForced) {
    WriteOptions opts;
    opts.codec = CodecKind::kStore;
    for (const auto& field : table.schema.fields()) {
      if (encoding_supports(f.kind, field.type)) opts.column_encodings[field.name] = f.kind;
    }
    const auto file = write_to_memory(table, opts);
    const FileFooter footer = read_footer(*file);
    for (size_t c = 0; c < table.columns.size(); ++c) {
      const auto& field = table.schema.field(c);
      if (!opts.column_encodings.count(field.name)) continue;
      Sizes s = column_sizes(*file, footer, c);
      s.raw = raw[c];
      forced[field.name][f.name] = s;
      Case k;
      k.name = field.name + "/forced/" + f.name;
      k.config = {{"column", field.name}, {"type", field.type.to_string()}, {"encoding", f.name}, {"codec", "store"}};
      k.sizes = s;
      k.metrics = {{"ratio_vs_csv", double(s.compressed) / double(s.raw)}};
      r.cases.push_back(std::move(k));
    }
  }

  auto ratio = [](const Sizes& a, const Sizes& b) { return double(a.compressed) / double(b.compressed); };
  const double dict_vs_plain = ratio(forced["str_lowcard"]["dict"], forced["str_lowcard"]["plain"]);
  r.check("low-cardinality strings: dict <= 25% of plain", dict_vs_plain <= 0.25, "ratio " + fmt(dict_vs_plain));
  const double rle_vs_plain = ratio(forced["int_runs"]["rle"], forced["int_runs"]["plain"]);
  r.check("run length 1000 integers: rle <= 1% of plain", rle_vs_plain <= 0.01, "ratio " + fmt(rle_vs_plain));

  const size_t fu = table.schema.index_of("float_uniform");
  const Sizes& fstore = by_file[{"arrow-like", CodecKind::kStore}][fu];
  const Sizes& freal = by_file[{"arrow-like", config.real_codec}][fu];
  const Sizes& fdeflate = by_file[{"arrow-like", CodecKind::kDeflateLike}][fu];
  const double saving = 1.0 - double(freal.compressed) / double(fstore.compressed);
  r.check("uniform floats, arrow-like: " + codec_name(config.real_codec) + " saves <= 10% over store", saving <= 0.10,
          "saving " + fmt(saving));
  r.metadata.push_back({"float_uniform_deflate_saving", fmt(1.0 - double(fdeflate.compressed) / double(fstore.compressed))});
  r.metadata.push_back({"float_uniform_store_ratio_vs_csv", fmt(double(fstore.compressed) / double(fstore.raw))});
  return r;
}

// ---------------------------------------------------------------------------
// vectors

namespace {

constexpr uint32_t kVectorDim = 32;

Table split_columns(const ColumnVector& nested) {
  std::vector<Field> fields;
  for (uint32_t d = 0; d < kVectorDim; ++d) fields.push_back({"v" + std::to_string(d), ColumnType::float64(), false});
  Table t = make_empty_table(Schema(fields));
  const auto& flat = nested.values<double>();
  for (size_t r = 0; r < nested.size(); ++r) {
    for (uint32_t d = 0; d < kVectorDim; ++d) t.columns[d].push_f64(flat[r * kVectorDim + d]);
  }
  t.row_count = nested.size();
  return t;
}

size_t nearest(const std::vector<double>& base, size_t n, const double* q) {
  size_t best = 0;
  double best_dot = -1e300;
  for (size_t i = 0; i < n; ++i) {
    double dot = 0;
    for (uint32_t d = 0; d < kVectorDim; ++d) dot += base[i * kVectorDim + d] * q[d];
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  return best;
}

}  // namespace

Report suite_vectors(const SuiteConfig& config) {
  Report r;
  r.suite = "vectors";
  base_metadata(r, config);
  const uint64_t n = scaled(1000, config.scale, 1000);
  const uint64_t nq = 100;
  auto vec_spec = [&](const std::string& name, uint64_t rows, uint64_t seed) {
    TableSpec t;
    t.name = name;
    t.row_count = rows;
    t.seed = seed;
    t.columns = {{"embedding", ColumnType::fixed_vector(kVectorDim), UnitVector{}}};
    return t;
  };
  const Table base = gen_table(vec_spec("base", n, config.seed));
  const Table queries = gen_table(vec_spec("queries", nq, config.seed + 1));
  r.metadata.push_back({"vectors", std::to_string(n)});
  r.metadata.push_back({"queries", std::to_string(nq)});
  r.metadata.push_back({"dim", std::to_string(kVectorDim)});
  const auto& truth = base.columns[0].values<double>();
  const auto& q = queries.columns[0].values<double>();
  std::vector<size_t> exact(nq);
  for (size_t i = 0; i < nq; ++i) exact[i] = nearest(truth, n, &q[i * kVectorDim]);
  const uint64_t raw = csv_bytes(base.columns[0]);

  WriteOptions plain;
  plain.policy = "arrow-like";
  const Table columnar = split_columns(base.columns[0]);
  for (const auto& f : columnar.schema.fields()) plain.column_encodings[f.name] = EncodingKind::plain();
  const auto columnar_file = write_to_memory(columnar, plain);
  Case col;
  col.name = "columnar/plain";
  col.config = {{"layout", "columnar"}, {"encoding", "plain"}};
  col.sizes.compressed = columnar_file->size();
  const FileFooter columnar_footer = read_footer(*columnar_file);
  for (size_t c = 0; c < kVectorDim; ++c) col.sizes.encoded += column_sizes(*columnar_file, columnar_footer, c).encoded;
  col.sizes.raw = raw;
  col.checksum = table_checksum(load_plain(columnar_file, all_column_names(columnar.schema)).table);
  const uint64_t columnar_bytes = col.sizes.compressed;
  r.cases.push_back(col);

  std::vector<std::pair<std::string, EncodingKind>> kinds = {{"plain", EncodingKind::plain()}};
  for (uint8_t k : {1, 2, 3, 4, 5, 6}) kinds.push_back({"scaled-int-" + std::to_string(k), EncodingKind::scaled_int(k)});
  uint64_t nested_plain = 0;
  for (const auto& [name, kind] : kinds) {
    WriteOptions opts;
    opts.policy = "arrow-like";
    opts.column_encodings["embedding"] = kind;
    const auto file = write_to_memory(base, opts);
    LoadResult loaded;
    const double load_ms = median_ms(config.reps, [&] { loaded = load_plain(file, {"embedding"}); });
    const auto& decoded = loaded.table.columns[0].values<double>();
    double max_err = 0;
    for (size_t i = 0; i < decoded.size(); ++i) max_err = std::max(max_err, std::fabs(decoded[i] - truth[i]));
    size_t agree = 0;
    for (size_t i = 0; i < nq; ++i) agree += nearest(decoded, n, &q[i * kVectorDim]) == exact[i];
    const double agreement = double(agree) / double(nq);

    Case k;
    k.name = "nested/" + name;
    k.config = {{"layout", "nested"}, {"encoding", name}};
    k.sizes = column_sizes(*file, read_footer(*file), 0);
    k.sizes.compressed = file->size();
    k.sizes.raw = raw;
    k.stats = loaded.stats;
    k.timings_ms = {{"load", load_ms}};
    k.metrics = {{"max_abs_error", max_err}, {"nn1_agreement", agreement}};
    k.checksum = table_checksum(loaded.table);
    r.cases.push_back(std::move(k));

    if (kind.tag == EncodingTag::kPlain) {
      nested_plain = file->size();
      r.check("nested plain decodes exactly", max_err == 0.0);
    }
    if (kind.tag == EncodingTag::kScaledInt && kind.scale == 4) {
      r.check("scaled-int-4 element error <= 5e-5", max_err <= 5e-5, "max error " + fmt(max_err));
      r.check("scaled-int-4 1-NN agreement >= 95%", agreement >= 0.95, "agreement " + fmt(agreement));
    }
  }
  r.check("nested plain size >= columnar plain size", nested_plain >= columnar_bytes,
          std::to_string(nested_plain) + " vs " + std::to_string(columnar_bytes));
  return r;
}

// ---------------------------------------------------------------------------
// selectivity

namespace {

const std::vector<double> kSelectivities = {0.0001, 0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 1.0};
constexpr size_t kSelectivityBatches = 16;

BitVector random_bits(size_t n, double s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitVector bv(n);
  if (s >= 1.0) {
    bv.set_range(0, n);
    return bv;
  }
  for (size_t i = 0; i < n; ++i) {
    if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < s) bv.set(i);
  }
  return bv;
}

}  // namespace

Report suite_selectivity(const SuiteConfig& config) {
  Report r;
  r.suite = "selectivity";
  base_metadata(r, config);
  TableSpec spec;
  spec.name = "selectivity";
  spec.row_count = kSelectivityBatches * kDefaultBatchRows;
  spec.seed = config.seed;
  spec.columns = {{"id", ColumnType::int64(), Sequential{0, 1}},
                  {"amount", ColumnType::float64(), Uniform{0, 1000, 2}}};
  const Table table = gen_table(spec);
  const auto file = write_to_memory(table, WriteOptions{});
  const uint64_t ncols = table.columns.size();
  r.metadata.push_back({"rows", std::to_string(table.row_count)});
  r.metadata.push_back({"chunks_per_column", std::to_string(kSelectivityBatches)});

  const std::vector<MaskMode> modes = {MaskMode::kBulk, MaskMode::kRecordSkip, MaskMode::kChunkSkip};
  bool results_match = true, record_exact = true, bulk_constant = true, record_increasing = true;
  bool chunk_all = true;
  std::optional<uint64_t> bulk_values;
  uint64_t last_record = 0;
  for (size_t si = 0; si < kSelectivities.size(); ++si) {
    const double s = kSelectivities[si];
    const BitVector bv = random_bits(table.row_count, s, config.seed ^ (0x9e3779b97f4a7c15ULL * (si + 1)));
    const PlainColumns expected = apply_mask(table, bv);
    const std::string checksum = table_checksum(expected);
    std::string fastest;
    double fastest_ms = 1e300;
    for (MaskMode mode : modes) {
      const LazyColumns lazy = open_lazy(file);
      MaskResult result = apply_mask(lazy, bv, mode);
      results_match = results_match && result.table == expected;
      const double ms = median_ms(config.reps, [&] { apply_mask(lazy, bv, mode); });
      const DecodeStats& st = result.stats;
      if (mode == MaskMode::kBulk) {
        if (bulk_values && *bulk_values != st.values_decoded) bulk_constant = false;
        bulk_values = st.values_decoded;
      } else if (mode == MaskMode::kRecordSkip) {
        if (st.values_decoded != bv.popcount() * ncols) record_exact = false;
        if (si > 0 && st.values_decoded <= last_record) record_increasing = false;
        last_record = st.values_decoded;
      } else if (s >= 0.001 && st.chunks_opened != kSelectivityBatches * ncols) {
        chunk_all = false;
      }
      if (ms < fastest_ms) {
        fastest_ms = ms;
        fastest = mask_mode_name(mode);
      }
      Case k;
      k.name = mask_mode_name(mode) + "/s=" + fmt(s);
      k.config = {{"mode", mask_mode_name(mode)}, {"selectivity", fmt(s)}};
      k.stats = st;
      k.timings_ms = {{"apply", ms}};
      k.metrics = {{"popcount", double(bv.popcount())}, {"realized_selectivity", bv.selectivity()}};
      k.checksum = checksum;
      r.cases.push_back(std::move(k));
    }
    r.metadata.push_back({"fastest_at_s=" + fmt(s), fastest});
  }
  r.check("every mode returns the selected rows", results_match);
  r.check("record-skip values_decoded == popcount per column", record_exact);
  r.check("bulk values_decoded constant in s", bulk_constant);
  r.check("record-skip values_decoded strictly increasing in s", record_increasing);
  r.check("chunk-skip opens every chunk for s >= 0.001", chunk_all);
  return r;
}

// ---------------------------------------------------------------------------
// subexpressions

Report suite_subexpressions(const SuiteConfig& config) {
  Report r;
  r.suite = "subexpr";
  base_metadata(r, config);
  std::map<std::string, TableSpec> specs = {
      {"sales", sales_spec(scaled(kSalesRows, config.scale, 20'000), config.seed)},
      {"demographics", demographics_spec(scaled(kDemographicsRows, config.scale, 20'000), config.seed)}};
  std::map<std::string, Table> tables;
  for (const auto& [name, spec] : specs) {
    tables[name] = gen_table(spec);
    r.metadata.push_back({name + "_rows", std::to_string(spec.row_count)});
  }

  for (const auto& [table_name, target] : benchmark_selectivity_targets()) {
    const TableSpec& spec = specs.at(table_name);
    const Predicate p = predicate_for(spec, target);
    const Table& t = tables.at(table_name);
    const double realized = evaluate_predicate(p, t.column(p.column)).selectivity();
    r.check("realized selectivity of " + p.to_string() + " within 0.5% of " + fmt(target.selectivity),
            std::fabs(realized - target.selectivity) <= 0.005, "realized " + fmt(realized));
  }

  const auto queries = subexpression_queries();
  std::map<std::string, PlainColumns> expected;
  for (const auto& nq : queries) expected[nq.query.name] = reference_execute(nq.query, tables.at(nq.table));

  {
    const TableSpec& sales = specs.at("sales");
    const auto& zipf = std::get<Zipf>(sales.column("cs_sold_time_sk").generator);
    double h = 0;
    for (uint64_t i = 1; i <= zipf.cardinality; ++i) h += 1.0 / std::pow(double(i), zipf.skew);
    const double p_time = (1.0 / std::pow(2.0, zipf.skew)) / h;
    const auto& seq = std::get<Sequential>(sales.column("cs_sold_date_sk").generator);
    const double day_rows = (2452653 - seq.start) < static_cast<int64_t>((sales.row_count + seq.every - 1) / seq.every)
                                ? double(seq.every)
                                : 0.0;
    const double mean = day_rows * p_time;
    const double sd = std::sqrt(day_rows * p_time * (1 - p_time));
    const double got = double(expected["Q1"].row_count);
    r.check("Q1 row count matches the generator", std::fabs(got - mean) <= 4 * sd + 1,
            "rows " + fmt(got) + ", expected " + fmt(mean));
  }

  const std::vector<CodecKind> codecs = {CodecKind::kStore, config.real_codec};
  for (CodecKind codec : codecs) {
    std::map<std::string, std::shared_ptr<const MemorySource>> files;
    for (const auto& [name, t] : tables) {
      WriteOptions opts;
      opts.codec = codec;
      files[name] = write_to_memory(t, opts);
    }
    for (const auto& nq : queries) {
      const SubexpressionQuery& q = nq.query;
      const std::string want = table_checksum(expected[q.name]);
      std::vector<std::string> wrong;
      std::map<Strategy, uint64_t> decoded;
      for (Strategy s : all_strategies()) {
        const SubexpressionResult first = eval_subexpression(q, files.at(nq.table), s);
        if (!(first.table == expected[q.name])) wrong.push_back(strategy_name(s));
        decoded[s] = first.stats.values_decoded;
        std::vector<double> load, compute, total;
        for (int i = 0; i < std::max(1, config.reps); ++i) {
          const SubexpressionResult run = eval_subexpression(q, files.at(nq.table), s);
          if (run.load_ms) load.push_back(*run.load_ms);
          if (run.compute_ms) compute.push_back(*run.compute_ms);
          total.push_back(run.total_ms);
        }
        auto median = [](std::vector<double> v) {
          std::sort(v.begin(), v.end());
          return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
        };
        Case k;
        k.name = q.name + "/" + strategy_name(s) + "/" + codec_name(codec);
        k.config = {{"query", q.name},
                    {"table", nq.table},
                    {"strategy", strategy_name(s)},
                    {"codec", codec_name(codec)},
                    {"fallback", first.fallback ? "true" : "false"}};
        k.stats = first.stats;
        if (!load.empty()) k.timings_ms.push_back({"load", median(load)});
        if (!compute.empty()) k.timings_ms.push_back({"compute", median(compute)});
        k.timings_ms.push_back({"total", median(total)});
        k.metrics = {{"rows", double(first.table.row_count)}};
        k.checksum = table_checksum(first.table);
        r.cases.push_back(std::move(k));
      }
      std::string detail;
      for (const auto& w : wrong) detail += (detail.empty() ? "" : ", ") + w;
      r.check(q.name + " under " + codec_name(codec) + ": every strategy matches the reference", wrong.empty(),
              wrong.empty() ? "checksum " + want : "mismatch: " + detail);
      if (q.name == "Q2" || q.name == "Q3") {
        r.check(q.name + " under " + codec_name(codec) + ": lazy-im-direct decodes fewer values than plain-full",
                decoded[Strategy::kLazyImDirect] < decoded[Strategy::kPlainFull],
                std::to_string(decoded[Strategy::kLazyImDirect]) + " vs " +
                    std::to_string(decoded[Strategy::kPlainFull]));
      }
    }
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"compression", "selectivity", "subexpr", "vectors"};
  return names;
}

Report run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "compression") return suite_compression(config);
  if (name == "selectivity") return suite_selectivity(config);
  if (name == "subexpr") return suite_subexpressions(config);
  if (name == "vectors") return suite_vectors(config);
  std::string valid;
  for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  fail(ErrorCode::kConfigError, "unknown suite '" + name + "' (valid: " + valid + ")");
}

}  // namespace colf::bench
