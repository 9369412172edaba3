#include "colf/exec.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "colf/kernel.hpp"

namespace colf {

const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all = {Strategy::kPlainFull, Strategy::kPlainDictDirect, Strategy::kLazyStream,
                                            Strategy::kLazyIm,    Strategy::kLazyImDirect,    Strategy::kLazyImDirectVec,
                                            Strategy::kChunkSkip};
  return all;
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kPlainFull: return "plain-full";
    case Strategy::kPlainDictDirect: return "plain-dict-direct";
    case Strategy::kLazyStream: return "lazy-stream";
    case Strategy::kLazyIm: return "lazy-im";
    case Strategy::kLazyImDirect: return "lazy-im-direct";
    case Strategy::kLazyImDirectVec: return "lazy-im-direct-vec";
    case Strategy::kChunkSkip: return "chunk-skip";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  std::string valid;
  for (Strategy s : all_strategies()) {
    if (strategy_name(s) == name) return s;
    valid += (valid.empty() ? "" : ", ") + strategy_name(s);
  }
  fail(ErrorCode::kConfigError, "unknown strategy '" + name + "' (valid: " + valid + ")");
}

std::string mask_mode_name(MaskMode m) {
  switch (m) {
    case MaskMode::kBulk: return "bulk";
    case MaskMode::kRecordSkip: return "record-skip";
    case MaskMode::kChunkSkip: return "chunk-skip";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct BoundPredicate {
  const Predicate* pred;
  size_t column;
};

std::vector<BoundPredicate> bind(const Schema& schema, const PredicateList& preds) {
  std::vector<BoundPredicate> out;
  for (const auto& p : preds) {
    const size_t c = schema.index_of(p.column);
    p.validate(schema.field(c).type);
    out.push_back({&p, c});
  }
  return out;
}

void and_into(BitVector& mask, size_t offset, const BitVector& fragment) {
  BitVector part = mask.slice(offset, offset + fragment.size());
  part &= fragment;
  mask.splice(offset, part);
}

struct BatchOutcome {
  BitVector bits;
  bool fallback = false;
  std::vector<SkipEvent> skips;
};

/// Per-batch filter state. Readers are kept so dictionary and presence pages are read once per chunk.
class BatchFilter {
 public:
  BatchFilter(const LazyColumns& lazy, size_t batch, const std::vector<BoundPredicate>& preds)
      : lazy_(lazy), batch_(batch), preds_(preds), meta_(lazy.footer().batches[batch]) {
    out_.bits = BitVector(meta_.row_count, true);
    for (const auto& bp : preds) columns_.insert(bp.column);
  }

  BatchOutcome finish() {
    lazy_.counters().add_chunk_skipped(columns_.size() - readers_.size());
    return std::move(out_);
  }

  void run(Strategy s, const std::vector<size_t>& order) {
    switch (s) {
      case Strategy::kPlainDictDirect:
        for (const auto& bp : preds_) whole_chunk(bp, true);
        return;
      case Strategy::kLazyStream:
        for (const auto& bp : preds_) {
          for (size_t p = 0; p < page_count(bp); ++p) value_page(bp, p);
        }
        return;
      case Strategy::kChunkSkip:
        for (size_t i : order) {
          const auto& bp = preds_[i];
          if (!any()) return;
          if (!zone_map_may_match(chunk_meta(bp).zone_map, *bp.pred)) {
            prune(bp, std::nullopt);
            continue;
          }
          whole_chunk(bp, false);
        }
        return;
      case Strategy::kLazyIm:
      case Strategy::kLazyImDirect:
      case Strategy::kLazyImDirectVec: {
        for (const auto& bp : preds_) {
          if (!zone_map_may_match(chunk_meta(bp).zone_map, *bp.pred)) {
            out_.skips.push_back(SkipEvent{batch_, bp.column, std::nullopt, *bp.pred});
            out_.bits = BitVector(meta_.row_count);
            lazy_.counters().add_batch_skipped();
            return;
          }
        }
        for (size_t i : order) {
          if (!any()) return;
          zoned(preds_[i], s);
        }
        return;
      }
      case Strategy::kPlainFull: break;
    }
  }

 private:
  bool any() const { return out_.bits.any_in_range(0, out_.bits.size()); }
  const ChunkMeta& chunk_meta(const BoundPredicate& bp) const { return meta_.chunks[bp.column]; }
  size_t page_count(const BoundPredicate& bp) const { return chunk_meta(bp).data_pages.size(); }
  static size_t page_begin(size_t p) { return static_cast<size_t>(ChunkReader::page_first_row(p)); }

  ChunkReader& reader(size_t column) {
    auto it = readers_.find(column);
    if (it == readers_.end()) {
      it = readers_.emplace(column, lazy_.chunk(batch_, column)).first;
      lazy_.counters().add_chunk_opened();
    }
    return it->second;
  }

  void prune(const BoundPredicate& bp, std::optional<size_t> page) {
    out_.skips.push_back(SkipEvent{batch_, bp.column, page, *bp.pred});
    if (page) {
      const size_t b = page_begin(*page);
      out_.bits.clear_range(b, b + chunk_meta(bp).data_pages[*page].value_count);
    } else {
      out_.bits.clear_range(0, out_.bits.size());
    }
  }

  void value_page(const BoundPredicate& bp, size_t p) {
    ColumnVector values = reader(bp.column).decode_page(p);
    and_into(out_.bits, page_begin(p), evaluate_predicate(*bp.pred, values));
  }

  void key_page(const BoundPredicate& bp, size_t p, const KeyPredicate& kp, bool packed) {
    ChunkReader& r = reader(bp.column);
    const uint32_t count = r.page(p).value_count;
    auto bytes = r.page_bytes(p);
    BitVector frag;
    if (packed && r.meta().encoding.tag == EncodingTag::kDict) {
      frag = filter_packed(bytes, count, r.meta().encoding.width, kp);
    } else {
      frag = BitVector(count);
      auto keys = page_keys(r.format(), bytes, count);
      for (uint32_t i = 0; i < count; ++i) {
        if (kp.matches(keys[i])) frag.set(i);
      }
    }
    if (r.meta().presence_page) frag &= r.presence().slice(page_begin(p), page_begin(p) + count);
    and_into(out_.bits, page_begin(p), frag);
  }

  /// Key translation for a dictionary chunk, or nullopt when values must be decoded.
  std::optional<KeyTranslation> translate(const BoundPredicate& bp) {
    if (!chunk_meta(bp).encoding.uses_dictionary()) {
      out_.fallback = true;
      return std::nullopt;
    }
    KeyTranslation t = dict_translate(*reader(bp.column).dictionary(), *bp.pred);
    if (std::holds_alternative<Unsupported>(t)) {
      out_.fallback = true;
      return std::nullopt;
    }
    return t;
  }

  void whole_chunk(const BoundPredicate& bp, bool direct) {
    if (direct) {
      if (auto t = translate(bp)) {
        if (std::holds_alternative<NoMatch>(*t)) {
          prune(bp, std::nullopt);
          return;
        }
        for (size_t p = 0; p < page_count(bp); ++p) key_page(bp, p, std::get<KeyPredicate>(*t), false);
        return;
      }
    }
    for (size_t p = 0; p < page_count(bp); ++p) value_page(bp, p);
  }

  void zoned(const BoundPredicate& bp, Strategy s) {
    std::optional<KeyTranslation> t;
    if (s != Strategy::kLazyIm) {
      t = translate(bp);
      if (t && std::holds_alternative<NoMatch>(*t)) {
        prune(bp, std::nullopt);
        return;
      }
    }
    const auto& pages = chunk_meta(bp).data_pages;
    for (size_t p = 0; p < pages.size(); ++p) {
      const size_t b = page_begin(p);
      if (!out_.bits.any_in_range(b, b + pages[p].value_count)) continue;
      if (!zone_map_may_match(pages[p].zone_map, *bp.pred)) {
        prune(bp, p);
        continue;
      }
      if (t) {
        key_page(bp, p, std::get<KeyPredicate>(*t), s == Strategy::kLazyImDirectVec);
      } else {
        value_page(bp, p);
      }
    }
  }

  const LazyColumns& lazy_;
  size_t batch_;
  const std::vector<BoundPredicate>& preds_;
  const RowBatchMeta& meta_;
  std::set<size_t> columns_;
  std::map<size_t, ChunkReader> readers_;
  BatchOutcome out_;
};

LazyColumns with_projection(const LazyColumns& lazy, std::vector<size_t> projection) {
  return LazyColumns(lazy.shared_source(), lazy.footer(), std::move(projection),
                     std::shared_ptr<DecodeCounters>(std::shared_ptr<DecodeCounters>{}, &lazy.counters()));
}

}  // namespace

std::vector<size_t> predicate_order(const FileFooter& footer, const PredicateList& preds) {
  auto bound = bind(footer.schema, preds);
  std::vector<uint64_t> survivors(bound.size(), 0);
  for (size_t i = 0; i < bound.size(); ++i) {
    for (const auto& batch : footer.batches) {
      const auto& chunk = batch.chunks[bound[i].column];
      if (!zone_map_may_match(chunk.zone_map, *bound[i].pred)) continue;
      for (const auto& page : chunk.data_pages) {
        if (zone_map_may_match(page.zone_map, *bound[i].pred)) survivors[i] += page.value_count;
      }
    }
  }
  std::vector<size_t> order(bound.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return survivors[a] < survivors[b]; });
  return order;
}

FilterResult filter(const LazyColumns& source, const PredicateList& preds, Strategy strategy) {
  const DecodeStats before = source.stats();
  const auto bound = bind(source.footer().schema, preds);
  FilterResult result;
  result.bits = BitVector(source.row_count(), true);
  if (bound.empty()) {
    result.stats = source.stats() - before;
    return result;
  }

  if (strategy == Strategy::kPlainFull) {
    std::vector<size_t> cols;
    for (const auto& bp : bound) {
      if (std::find(cols.begin(), cols.end(), bp.column) == cols.end()) cols.push_back(bp.column);
    }
    LoadResult loaded = load_plain(with_projection(source, cols));
    for (const auto& bp : bound) {
      result.bits &= evaluate_predicate(*bp.pred, loaded.table.column(bp.pred->column));
    }
    result.stats = source.stats() - before;
    return result;
  }

  const auto order = predicate_order(source.footer(), preds);
  const size_t nbatches = source.batch_count();
  std::vector<BatchOutcome> outcomes(nbatches);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (size_t b = 0; b < nbatches; ++b) {
    try {
      BatchFilter bf(source, b, bound);
      bf.run(strategy, order);
      outcomes[b] = bf.finish();
    } catch (...) {
#pragma omp critical(colf_filter_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  for (size_t b = 0; b < nbatches; ++b) {
    result.bits.splice(source.footer().batches[b].first_row, outcomes[b].bits);
    result.fallback |= outcomes[b].fallback;
    for (auto& e : outcomes[b].skips) result.skips.push_back(std::move(e));
  }
  result.stats = source.stats() - before;
  return result;
}

BitVector filter(const PlainColumns& source, const PredicateList& preds) {
  const auto bound = bind(source.schema, preds);
  BitVector bits(source.row_count, true);
  for (const auto& bp : bound) bits &= evaluate_predicate(*bp.pred, source.columns[bp.column]);
  return bits;
}

PlainColumns apply_mask(const PlainColumns& source, const BitVector& bv) {
  if (bv.size() != source.row_count) {
    fail(ErrorCode::kShapeError, "bit vector has " + std::to_string(bv.size()) + " bits for " +
                                     std::to_string(source.row_count) + " rows");
  }
  const auto rows = bv.set_positions();
  PlainColumns out;
  out.schema = source.schema;
  out.row_count = rows.size();
  for (const auto& col : source.columns) out.columns.push_back(col.gather(rows));
  return out;
}

MaskResult apply_mask(const LazyColumns& source, const BitVector& bv, MaskMode mode) {
  if (bv.size() != source.row_count()) {
    fail(ErrorCode::kShapeError, "bit vector has " + std::to_string(bv.size()) + " bits for " +
                                     std::to_string(source.row_count()) + " rows");
  }
  const DecodeStats before = source.stats();
  MaskResult result;
  switch (mode) {
    case MaskMode::kBulk:
      result.table = apply_mask(load_plain(source).table, bv);
      break;
    case MaskMode::kRecordSkip:
      result.table = materialize(source, bv);
      break;
    case MaskMode::kChunkSkip: {
      const auto& footer = source.footer();
      const size_t ncols = source.projection().size();
      result.table.schema = source.schema();
      result.table.row_count = bv.popcount();
      for (size_t c = 0; c < ncols; ++c) result.table.columns.emplace_back(source.schema().field(c).type);
      for (size_t b = 0; b < footer.batches.size(); ++b) {
        const auto& batch = footer.batches[b];
        const auto rows = bv.slice(batch.first_row, batch.first_row + batch.row_count).set_positions();
        if (rows.empty()) {
          source.counters().add_batch_skipped();
          source.counters().add_chunk_skipped(ncols);
          continue;
        }
        for (size_t c = 0; c < ncols; ++c) {
          ChunkReader reader = source.chunk(b, source.projection()[c]);
          source.counters().add_chunk_opened();
          ColumnVector whole(reader.type());
          decode_chunk_into(reader, whole);
          result.table.columns[c].append_column(whole.gather(rows));
        }
      }
      break;
    }
  }
  result.stats = source.stats() - before;
  return result;
}

LoadResult project(const LazyColumns& source, const std::vector<std::string>& columns) {
  return load_plain(with_projection(source, resolve_projection(source.footer().schema, columns)));
}

PlainColumns project(const PlainColumns& source, const std::vector<std::string>& columns) {
  return source.select_columns(columns);
}

SubexpressionResult eval_subexpression(const SubexpressionQuery& q, std::shared_ptr<const ByteSource> file,
                                       Strategy strategy) {
  SubexpressionResult r;
  const auto t0 = Clock::now();
  auto counters = std::make_shared<DecodeCounters>();
  LazyColumns lazy = open_lazy(std::move(file), q.projection, counters);
  bind(lazy.footer().schema, q.predicates);

  switch (strategy) {
    case Strategy::kPlainFull: {
      std::vector<std::string> needed = q.projection;
      for (const auto& p : q.predicates) {
        if (std::find(needed.begin(), needed.end(), p.column) == needed.end()) needed.push_back(p.column);
      }
      LoadResult loaded = project(lazy, needed);
      r.load_ms = ms_since(t0);
      const auto t1 = Clock::now();
      BitVector bits = filter(loaded.table, q.predicates);
      r.table = apply_mask(loaded.table, bits).select_columns(q.projection);
      r.compute_ms = ms_since(t1);
      break;
    }
    case Strategy::kPlainDictDirect: {
      LoadResult loaded = load_plain(lazy);
      r.load_ms = ms_since(t0);
      const auto t1 = Clock::now();
      FilterResult f = filter(lazy, q.predicates, strategy);
      r.fallback = f.fallback;
      r.table = apply_mask(loaded.table, f.bits);
      r.compute_ms = ms_since(t1);
      break;
    }
    case Strategy::kLazyStream: {
      FilterResult f = filter(lazy, q.predicates, strategy);
      r.table = materialize(lazy, f.bits);
      break;
    }
    case Strategy::kLazyIm:
    case Strategy::kLazyImDirect:
    case Strategy::kLazyImDirectVec:
    case Strategy::kChunkSkip: {
      r.load_ms = ms_since(t0);
      const auto t1 = Clock::now();
      FilterResult f = filter(lazy, q.predicates, strategy);
      r.fallback = f.fallback;
      const MaskMode mode = strategy == Strategy::kChunkSkip ? MaskMode::kChunkSkip : MaskMode::kRecordSkip;
      r.table = apply_mask(lazy, f.bits, mode).table;
      r.compute_ms = ms_since(t1);
      break;
    }
  }
  r.total_ms = ms_since(t0);
  r.stats = counters->snapshot();
  return r;
}

BitVector reference_filter(const PlainColumns& table, const PredicateList& preds) {
  std::vector<const ColumnVector*> cols;
  for (const auto& p : preds) {
    const size_t c = table.schema.index_of(p.column);
    p.validate(table.schema.field(c).type);
    cols.push_back(&table.columns[c]);
  }
  BitVector bits(table.row_count);
  for (size_t i = 0; i < table.row_count; ++i) {
    bool ok = true;
    for (size_t k = 0; k < preds.size() && ok; ++k) {
      const Value v = cols[k]->get(i);
      ok = !v.is_null() && predicate_eval_scalar(preds[k], v);
    }
    if (ok) bits.set(i);
  }
  return bits;
}

PlainColumns reference_execute(const SubexpressionQuery& q, const PlainColumns& table) {
  const BitVector bits = reference_filter(table, q.predicates);
  PlainColumns out = make_empty_table(table.select_columns(q.projection).schema);
  for (size_t i = 0; i < table.row_count; ++i) {
    if (!bits.get(i)) continue;
    for (size_t c = 0; c < q.projection.size(); ++c) out.columns[c].append(table.column(q.projection[c]).get(i));
    ++out.row_count;
  }
  return out;
}

}  // namespace colf
