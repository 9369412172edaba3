#include "colf/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "byte_io.hpp"
#include "colf/bitpack.hpp"

namespace colf {

using detail::ByteReader;
using detail::ByteWriter;
using detail::load_le;

std::string EncodingKind::to_string() const {
  switch (tag) {
    case EncodingTag::kPlain: return "plain";
    case EncodingTag::kBitPack: return "bitpack(" + std::to_string(width) + ")";
    case EncodingTag::kDict: return order_preserving ? "dict(sorted)" : "dict";
    case EncodingTag::kRle: return "rle";
    case EncodingTag::kDictRle: return order_preserving ? "dict_rle(sorted)" : "dict_rle";
    case EncodingTag::kDeltaFor:
      return "delta_for(" + std::to_string(reference) + "," + std::to_string(width) + ")";
    case EncodingTag::kScaledInt: return "scaled_int(" + std::to_string(scale) + ")";
  }
  return "?";
}

EncodingKind EncodingKind::parse(const std::string& name) {
  if (name == "plain") return plain();
  if (name == "bitpack") return bitpack();
  if (name == "dict") return dict(false);
  if (name == "dict-sorted") return dict(true);
  if (name == "rle") return rle();
  if (name == "dict-rle") return dict_rle(false);
  if (name == "dict-rle-sorted") return dict_rle(true);
  if (name == "delta-for") return delta_for();
  if (name.starts_with("scaled-int-") && name.size() == 12 && name[11] >= '0' && name[11] <= '9') {
    return scaled_int(static_cast<uint8_t>(name[11] - '0'));
  }
  fail(ErrorCode::kConfigError, "unknown encoding '" + name + "'");
}

bool encoding_supports(const EncodingKind& kind, const ColumnType& t) {
  switch (kind.tag) {
    case EncodingTag::kPlain:
    case EncodingTag::kDict:
    case EncodingTag::kDictRle: return true;
    case EncodingTag::kBitPack:
    case EncodingTag::kRle:
    case EncodingTag::kDeltaFor: return t.is_integer();
    case EncodingTag::kScaledInt:
      return (t.id == TypeId::kFloat64 || t.id == TypeId::kFixedVector) && kind.scale <= 9;
  }
  return false;
}

unsigned Dictionary::key_width() const {
  return std::max(1u, bit_width_of(entries.size() > 0 ? entries.size() - 1 : 0));
}

size_t EncodedChunk::payload_bytes() const {
  size_t n = 0;
  for (const auto& p : pages) n += p.bytes.size();
  return n;
}

namespace {

// ---------------------------------------------------------------------------
// Plain layout

void write_plain(const ColumnVector& col, size_t begin, size_t end, std::vector<uint8_t>& out) {
  ByteWriter w(out);
  const auto& type = col.type();
  switch (type.id) {
    case TypeId::kInt32:
      for (size_t i = begin; i < end; ++i) w.put<int32_t>(col.values<int32_t>()[i]);
      break;
    case TypeId::kInt64:
      for (size_t i = begin; i < end; ++i) w.put<int64_t>(col.values<int64_t>()[i]);
      break;
    case TypeId::kFloat64:
      for (size_t i = begin; i < end; ++i) w.put<double>(col.values<double>()[i]);
      break;
    case TypeId::kBool:
      for (size_t i = begin; i < end; ++i) w.put_u8(col.values<uint8_t>()[i]);
      break;
    case TypeId::kUtf8: {
      const auto& s = col.values<std::string>();
      uint32_t offset = 0;
      w.put<uint32_t>(0);
      for (size_t i = begin; i < end; ++i) {
        offset += static_cast<uint32_t>(s[i].size());
        w.put<uint32_t>(offset);
      }
      for (size_t i = begin; i < end; ++i) {
        w.put_bytes({reinterpret_cast<const uint8_t*>(s[i].data()), s[i].size()});
      }
      break;
    }
    case TypeId::kFixedVector: {
      // List layout: element offsets then elements.
      const auto& v = col.values<double>();
      for (size_t i = 0; i <= end - begin; ++i) w.put<uint32_t>(static_cast<uint32_t>(i * type.dim));
      for (size_t i = begin * type.dim; i < end * type.dim; ++i) w.put<double>(v[i]);
      break;
    }
  }
}

struct PlainView {
  const ColumnType& type;
  std::span<const uint8_t> bytes;
  uint32_t count;
  std::span<const uint8_t> data;  // after offsets, for Utf8/FixedVector

  PlainView(const ColumnType& t, std::span<const uint8_t> b, uint32_t n) : type(t), bytes(b), count(n) {
    const size_t width = t.fixed_width();
    if (t.id == TypeId::kUtf8 || t.id == TypeId::kFixedVector) {
      const size_t offsets = (size_t{n} + 1) * 4;
      if (b.size() < offsets) fail(ErrorCode::kCorruptChunk, "plain page shorter than its offsets");
      data = b.subspan(offsets);
      uint32_t prev = 0;
      for (uint32_t i = 0; i <= n; ++i) {
        uint32_t o = offset(i);
        if (o < prev || (i == 0 && o != 0)) fail(ErrorCode::kCorruptChunk, "non-monotone plain offsets");
        prev = o;
      }
      const size_t scale = t.id == TypeId::kFixedVector ? 8 : 1;
      if (size_t{prev} * scale != data.size()) fail(ErrorCode::kCorruptChunk, "plain page length mismatch");
      if (t.id == TypeId::kFixedVector && prev != size_t{n} * t.dim) {
        fail(ErrorCode::kCorruptChunk, "vector page offsets disagree with dimension");
      }
    } else if (b.size() != size_t{n} * width) {
      fail(ErrorCode::kCorruptChunk, "plain page length mismatch");
    }
  }

  uint32_t offset(uint32_t i) const { return load_le<uint32_t>(bytes.data() + 4 * size_t{i}); }

  void append(uint32_t i, ColumnVector& out) const {
    switch (type.id) {
      case TypeId::kInt32: out.push_i32(load_le<int32_t>(bytes.data() + 4 * size_t{i})); break;
      case TypeId::kInt64: out.push_i64(load_le<int64_t>(bytes.data() + 8 * size_t{i})); break;
      case TypeId::kFloat64: out.push_f64(load_le<double>(bytes.data() + 8 * size_t{i})); break;
      case TypeId::kBool: out.push_bool(bytes[i] != 0); break;
      case TypeId::kUtf8: {
        const uint32_t lo = offset(i);
        const uint32_t hi = offset(i + 1);
        out.push_str(std::string(reinterpret_cast<const char*>(data.data()) + lo, hi - lo));
        break;
      }
      case TypeId::kFixedVector: {
        std::vector<double> v(type.dim);
        std::memcpy(v.data(), data.data() + size_t{offset(i)} * 8, type.dim * sizeof(double));
        out.push_vec(v);
        break;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Dictionary construction

template <typename Key, typename KeyFn>
void build_keys(const ColumnVector& col, KeyFn key_of, std::vector<uint32_t>& keys, std::vector<uint32_t>& first_rows) {
  std::unordered_map<Key, uint32_t> ids;
  keys.assign(col.size(), 0);
  for (size_t i = 0; i < col.size(); ++i) {
    if (col.is_null(i)) continue;
    auto [it, inserted] = ids.try_emplace(key_of(i), static_cast<uint32_t>(first_rows.size()));
    if (inserted) {
      if (first_rows.size() == std::numeric_limits<uint32_t>::max()) {
        fail(ErrorCode::kCardinalityError, "dictionary exceeds 2^32 entries");
      }
      first_rows.push_back(static_cast<uint32_t>(i));
    }
    keys[i] = it->second;
  }
}

bool entry_less(const ColumnVector& e, size_t a, size_t b) {
  switch (e.type().id) {
    case TypeId::kInt32: return e.values<int32_t>()[a] < e.values<int32_t>()[b];
    case TypeId::kInt64: return e.values<int64_t>()[a] < e.values<int64_t>()[b];
    case TypeId::kFloat64: return float_order_key(e.values<double>()[a]) < float_order_key(e.values<double>()[b]);
    case TypeId::kUtf8: return e.values<std::string>()[a] < e.values<std::string>()[b];
    case TypeId::kBool: return e.values<uint8_t>()[a] < e.values<uint8_t>()[b];
    case TypeId::kFixedVector: return compare_values(e.get(a), e.get(b)) < 0;
  }
  return false;
}

Dictionary build_dictionary(const ColumnVector& col, bool sorted, std::vector<uint32_t>& keys) {
  std::vector<uint32_t> first_rows;
  switch (col.type().id) {
    case TypeId::kInt32:
      build_keys<int32_t>(col, [&](size_t i) { return col.values<int32_t>()[i]; }, keys, first_rows);
      break;
    case TypeId::kInt64:
      build_keys<int64_t>(col, [&](size_t i) { return col.values<int64_t>()[i]; }, keys, first_rows);
      break;
    case TypeId::kFloat64:
      build_keys<uint64_t>(col, [&](size_t i) { return std::bit_cast<uint64_t>(col.values<double>()[i]); }, keys,
                           first_rows);
      break;
    case TypeId::kUtf8:
      build_keys<std::string_view>(col, [&](size_t i) { return std::string_view(col.values<std::string>()[i]); },
                                   keys, first_rows);
      break;
    case TypeId::kBool:
      build_keys<uint8_t>(col, [&](size_t i) { return col.values<uint8_t>()[i]; }, keys, first_rows);
      break;
    case TypeId::kFixedVector: {
      const size_t dim = col.type().dim;
      build_keys<std::string_view>(
          col,
          [&](size_t i) {
            return std::string_view(reinterpret_cast<const char*>(&col.values<double>()[i * dim]), dim * 8);
          },
          keys, first_rows);
      break;
    }
  }
  Dictionary dict{col.gather(first_rows), sorted};
  if (sorted && dict.size() > 1) {
    std::vector<uint32_t> order(dict.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](uint32_t a, uint32_t b) { return entry_less(dict.entries, a, b); });
    std::vector<uint32_t> remap(dict.size());
    for (uint32_t k = 0; k < order.size(); ++k) remap[order[k]] = k;
    dict.entries = dict.entries.gather(order);
    for (size_t i = 0; i < keys.size(); ++i) {
      if (!col.is_null(i)) keys[i] = remap[keys[i]];
    }
  }
  return dict;
}

// ---------------------------------------------------------------------------
// Run-length pages: (uint32 run length, value) pairs

template <typename T>
void write_runs(std::span<const T> values, std::vector<uint8_t>& out) {
  ByteWriter w(out);
  size_t i = 0;
  while (i < values.size()) {
    size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    w.put<uint32_t>(static_cast<uint32_t>(j - i));
    w.put<T>(values[i]);
    i = j;
  }
}

/// Calls fn(run_start, run_length, value) for every run; validates the total length.
template <typename T, typename Fn>
void for_each_run(std::span<const uint8_t> bytes, uint32_t count, Fn&& fn) {
  ByteReader r(bytes, ErrorCode::kCorruptChunk);
  uint64_t at = 0;
  while (!r.done()) {
    const uint32_t len = r.get<uint32_t>();
    const T v = r.get<T>();
    if (len == 0 || at + len > count) r.corrupt("run lengths exceed page value count");
    if (!fn(static_cast<uint32_t>(at), len, v)) return;
    at += len;
  }
  if (at != count) r.corrupt("run lengths do not cover the page");
}

// ---------------------------------------------------------------------------
// ScaledInt

double pow10(unsigned scale) {
  static constexpr double kPow[] = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
  return kPow[scale];
}

int64_t scale_value(double v, unsigned scale) {
  if (!std::isfinite(v)) fail(ErrorCode::kPrecisionError, "non-finite value cannot be scaled");
  const double q = std::nearbyint(v * pow10(scale));
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  if (!(std::fabs(q) <= kLimit)) {
    fail(ErrorCode::kPrecisionError, "value " + std::to_string(v) + " overflows scale " + std::to_string(scale));
  }
  return static_cast<int64_t>(q);
}

struct ForHeader {
  int64_t reference = 0;
  uint8_t width = 0;
};

void write_for_block(std::span<const int64_t> q, const BitVector* present, size_t first_row, size_t per_row,
                     std::vector<uint8_t>& out) {
  ForHeader h;
  bool any = false;
  int64_t lo = 0, hi = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (present && !present->get(first_row + i / per_row)) continue;
    if (!any) {
      lo = hi = q[i];
      any = true;
    }
    lo = std::min(lo, q[i]);
    hi = std::max(hi, q[i]);
  }
  h.reference = lo;
  h.width = static_cast<uint8_t>(bit_width_of(static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo)));
  ByteWriter w(out);
  w.put<int64_t>(h.reference);
  w.put_u8(h.width);
  std::vector<uint64_t> offsets(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    const bool is_present = !present || present->get(first_row + i / per_row);
    offsets[i] = is_present ? static_cast<uint64_t>(q[i]) - static_cast<uint64_t>(h.reference) : 0;
  }
  pack_bits(offsets, h.width, out);
}

struct ScaledView {
  ForHeader header;
  std::span<const uint8_t> packed;
  size_t elements;
  double divisor;

  ScaledView(const ColumnType& t, unsigned scale, std::span<const uint8_t> bytes, uint32_t count)
      : divisor(pow10(scale)) {
    ByteReader r(bytes, ErrorCode::kCorruptChunk);
    if (t.id == TypeId::kFixedVector) r.get_bytes((size_t{count} + 1) * 4);
    header.reference = r.get<int64_t>();
    header.width = r.get_u8();
    if (header.width > 64) r.corrupt("scaled-int width out of range");
    elements = size_t{count} * (t.id == TypeId::kFixedVector ? t.dim : 1);
    packed = r.get_bytes(packed_bytes(elements, header.width));
    if (!r.done()) r.corrupt("trailing bytes in scaled-int page");
  }

  double element(size_t i) const {
    const uint64_t off = unpack_one(packed, i, header.width);
    const int64_t q = static_cast<int64_t>(static_cast<uint64_t>(header.reference) + off);
    return static_cast<double>(q) / divisor;
  }
};

// ---------------------------------------------------------------------------
// Page encoding

void encode_page(const ColumnVector& col, const EncodingKind& kind, size_t begin, size_t end,
                 std::span<const uint32_t> keys, std::vector<uint8_t>& out) {
  const auto& type = col.type();
  switch (kind.tag) {
    case EncodingTag::kPlain:
      write_plain(col, begin, end, out);
      return;
    case EncodingTag::kBitPack:
    case EncodingTag::kDeltaFor: {
      std::vector<uint64_t> raw(end - begin);
      const uint64_t ref = kind.tag == EncodingTag::kDeltaFor ? static_cast<uint64_t>(kind.reference) : 0;
      for (size_t i = begin; i < end; ++i) {
        raw[i - begin] = col.is_null(i) ? 0 : static_cast<uint64_t>(col.integer_at(i)) - ref;
      }
      pack_bits(raw, kind.width, out);
      return;
    }
    case EncodingTag::kRle:
      if (type.id == TypeId::kInt32) {
        write_runs<int32_t>(std::span(col.values<int32_t>()).subspan(begin, end - begin), out);
      } else {
        write_runs<int64_t>(std::span(col.values<int64_t>()).subspan(begin, end - begin), out);
      }
      return;
    case EncodingTag::kDict: {
      std::vector<uint64_t> raw(keys.begin() + static_cast<std::ptrdiff_t>(begin),
                                keys.begin() + static_cast<std::ptrdiff_t>(end));
      pack_bits(raw, kind.width, out);
      return;
    }
    case EncodingTag::kDictRle:
      write_runs<uint32_t>(keys.subspan(begin, end - begin), out);
      return;
    case EncodingTag::kScaledInt: {
      const size_t per_row = type.id == TypeId::kFixedVector ? type.dim : 1;
      if (type.id == TypeId::kFixedVector) {
        ByteWriter w(out);
        for (size_t i = 0; i <= end - begin; ++i) w.put<uint32_t>(static_cast<uint32_t>(i * per_row));
      }
      const auto& v = col.values<double>();
      std::vector<int64_t> q((end - begin) * per_row);
      for (size_t i = 0; i < q.size(); ++i) {
        const size_t row = begin + i / per_row;
        q[i] = col.is_null(row) ? 0 : scale_value(v[begin * per_row + i], kind.scale);
      }
      write_for_block(q, &col.validity(), begin, per_row, out);
      return;
    }
  }
}

EncodingKind resolve_kind(const ColumnVector& col, EncodingKind kind, const ColumnStats& stats) {
  if (!encoding_supports(kind, col.type())) {
    fail(ErrorCode::kTypeError, "encoding " + kind.to_string() + " cannot encode " + col.type().to_string());
  }
  switch (kind.tag) {
    case EncodingTag::kBitPack: {
      if (stats.min && stats.min->as_integer() < 0) {
        fail(ErrorCode::kConfigError, "bit-packing requires non-negative values");
      }
      const unsigned need =
          std::max(1u, bit_width_of(stats.max ? static_cast<uint64_t>(stats.max->as_integer()) : 0));
      if (kind.width == 0) kind.width = static_cast<uint8_t>(need);
      if (kind.width < need || kind.width > 64) {
        fail(ErrorCode::kConfigError, "bit width " + std::to_string(kind.width) + " cannot hold the values");
      }
      break;
    }
    case EncodingTag::kDeltaFor: {
      if (!stats.min) {
        kind.reference = 0;
        kind.width = 0;
        break;
      }
      kind.reference = stats.min->as_integer();
      kind.width = static_cast<uint8_t>(bit_width_of(static_cast<uint64_t>(stats.max->as_integer()) -
                                                     static_cast<uint64_t>(kind.reference)));
      break;
    }
    default:
      break;
  }
  return kind;
}

}  // namespace

EncodedChunk encode_chunk(const ColumnVector& values, EncodingKind kind) {
  EncodedChunk chunk;
  chunk.type = values.type();
  chunk.stats = compute_stats(values);
  chunk.kind = resolve_kind(values, kind, chunk.stats);
  chunk.presence = values.validity();
  chunk.value_count = values.size();

  std::vector<uint32_t> keys;
  if (chunk.kind.uses_dictionary()) {
    chunk.dictionary = build_dictionary(values, chunk.kind.order_preserving, keys);
    chunk.kind.width = static_cast<uint8_t>(chunk.dictionary->key_width());
  }
  for (size_t begin = 0; begin < values.size(); begin += kPageValues) {
    const size_t end = std::min<size_t>(values.size(), begin + kPageValues);
    EncodedPage page;
    page.value_count = static_cast<uint32_t>(end - begin);
    encode_page(values, chunk.kind, begin, end, keys, page.bytes);
    chunk.pages.push_back(std::move(page));
  }
  return chunk;
}

EncodedChunk encode_chunk(const ColumnType& type, std::span<const Value> values, EncodingKind kind) {
  ColumnVector col(type);
  col.reserve(values.size());
  for (const auto& v : values) col.append(v);
  return encode_chunk(col, kind);
}

namespace {

void require_dictionary(const PageFormat& f) {
  if (!f.dictionary) fail(ErrorCode::kCorruptChunk, "dictionary-encoded page without a dictionary");
}

void check_key(const PageFormat& f, uint64_t key) {
  if (key >= f.dictionary->size()) fail(ErrorCode::kCorruptChunk, "dictionary key out of range");
}

// An all-null chunk has an empty dictionary; its slots hold key 0.
void append_key(const PageFormat& f, uint64_t key, ColumnVector& out) {
  if (key == 0 && f.dictionary->size() == 0) {
    out.append_null();
    return;
  }
  check_key(f, key);
  out.append_from(f.dictionary->entries, key);
}

std::span<const uint8_t> packed_payload(std::span<const uint8_t> bytes, uint32_t count, unsigned width) {
  if (width > 64 || bytes.size() != packed_bytes(count, width)) {
    fail(ErrorCode::kCorruptChunk, "bit-packed page length mismatch");
  }
  return bytes;
}

void push_integer(ColumnVector& out, int64_t v) {
  if (out.type().id == TypeId::kInt32) {
    out.push_i32(static_cast<int32_t>(v));
  } else {
    out.push_i64(v);
  }
}

template <typename T>
void expand_runs_into(std::span<const uint8_t> bytes, uint32_t count, ColumnVector& out) {
  for_each_run<T>(bytes, count, [&](uint32_t, uint32_t len, T v) {
    for (uint32_t k = 0; k < len; ++k) push_integer(out, v);
    return true;
  });
}

template <typename T>
void gather_runs_into(std::span<const uint8_t> bytes, uint32_t count, std::span<const uint32_t> positions,
                      auto&& emit) {
  size_t next = 0;
  for_each_run<T>(bytes, count, [&](uint32_t start, uint32_t len, T v) {
    while (next < positions.size() && positions[next] < start + len) {
      emit(v);
      ++next;
    }
    return next < positions.size();
  });
  if (next != positions.size()) fail(ErrorCode::kCorruptChunk, "position beyond page runs");
}

void emit_scaled(const ColumnType& t, const ScaledView& view, uint32_t row, ColumnVector& out) {
  if (t.id == TypeId::kFloat64) {
    out.push_f64(view.element(row));
    return;
  }
  std::vector<double> v(t.dim);
  for (uint32_t d = 0; d < t.dim; ++d) v[d] = view.element(size_t{row} * t.dim + d);
  out.push_vec(v);
}

}  // namespace

void decode_page_into(const PageFormat& f, std::span<const uint8_t> bytes, uint32_t count, ColumnVector& out) {
  out.reserve(out.size() + count);
  switch (f.kind.tag) {
    case EncodingTag::kPlain: {
      PlainView view(f.type, bytes, count);
      for (uint32_t i = 0; i < count; ++i) view.append(i, out);
      return;
    }
    case EncodingTag::kBitPack:
    case EncodingTag::kDeltaFor: {
      std::vector<uint64_t> raw;
      unpack_bits(packed_payload(bytes, count, f.kind.width), count, f.kind.width, raw);
      const uint64_t ref = f.kind.tag == EncodingTag::kDeltaFor ? static_cast<uint64_t>(f.kind.reference) : 0;
      for (uint64_t r : raw) push_integer(out, static_cast<int64_t>(r + ref));
      return;
    }
    case EncodingTag::kRle:
      if (f.type.id == TypeId::kInt32) {
        expand_runs_into<int32_t>(bytes, count, out);
      } else {
        expand_runs_into<int64_t>(bytes, count, out);
      }
      return;
    case EncodingTag::kDict:
    case EncodingTag::kDictRle: {
      require_dictionary(f);
      for (uint32_t k : page_keys(f, bytes, count)) {
        append_key(f, k, out);
      }
      return;
    }
    case EncodingTag::kScaledInt: {
      ScaledView view(f.type, f.kind.scale, bytes, count);
      for (uint32_t i = 0; i < count; ++i) emit_scaled(f.type, view, i, out);
      return;
    }
  }
}

void gather_page_into(const PageFormat& f, std::span<const uint8_t> bytes, uint32_t count,
                      std::span<const uint32_t> positions, ColumnVector& out) {
  for (uint32_t p : positions) {
    if (p >= count) fail(ErrorCode::kIndexError, "page position out of range");
  }
  switch (f.kind.tag) {
    case EncodingTag::kPlain: {
      PlainView view(f.type, bytes, count);
      for (uint32_t p : positions) view.append(p, out);
      return;
    }
    case EncodingTag::kBitPack:
    case EncodingTag::kDeltaFor: {
      auto packed = packed_payload(bytes, count, f.kind.width);
      const uint64_t ref = f.kind.tag == EncodingTag::kDeltaFor ? static_cast<uint64_t>(f.kind.reference) : 0;
      for (uint32_t p : positions) push_integer(out, static_cast<int64_t>(unpack_one(packed, p, f.kind.width) + ref));
      return;
    }
    case EncodingTag::kRle:
      if (f.type.id == TypeId::kInt32) {
        gather_runs_into<int32_t>(bytes, count, positions, [&](int32_t v) { out.push_i32(v); });
      } else {
        gather_runs_into<int64_t>(bytes, count, positions, [&](int64_t v) { out.push_i64(v); });
      }
      return;
    case EncodingTag::kDict: {
      require_dictionary(f);
      auto packed = packed_payload(bytes, count, f.kind.width);
      for (uint32_t p : positions) {
        const uint64_t k = unpack_one(packed, p, f.kind.width);
        append_key(f, k, out);
      }
      return;
    }
    case EncodingTag::kDictRle:
      require_dictionary(f);
      gather_runs_into<uint32_t>(bytes, count, positions, [&](uint32_t k) {
        append_key(f, k, out);
      });
      return;
    case EncodingTag::kScaledInt: {
      ScaledView view(f.type, f.kind.scale, bytes, count);
      for (uint32_t p : positions) emit_scaled(f.type, view, p, out);
      return;
    }
  }
}

std::vector<uint32_t> page_keys(const PageFormat& f, std::span<const uint8_t> bytes, uint32_t count) {
  std::vector<uint32_t> keys;
  keys.reserve(count);
  if (f.kind.tag == EncodingTag::kDict) {
    if (f.kind.width > 32) fail(ErrorCode::kCorruptChunk, "dictionary key width out of range");
    std::vector<uint64_t> raw;
    unpack_bits(packed_payload(bytes, count, f.kind.width), count, f.kind.width, raw);
    for (uint64_t k : raw) keys.push_back(static_cast<uint32_t>(k));
  } else if (f.kind.tag == EncodingTag::kDictRle) {
    for_each_run<uint32_t>(bytes, count, [&](uint32_t, uint32_t len, uint32_t k) {
      keys.insert(keys.end(), len, k);
      return true;
    });
  } else {
    fail(ErrorCode::kTypeError, "page is not dictionary encoded");
  }
  return keys;
}

ColumnVector decode_chunk(const EncodedChunk& chunk) {
  ColumnVector out(chunk.type);
  out.reserve(chunk.value_count);
  const PageFormat format{chunk.type, chunk.kind, chunk.dictionary ? &*chunk.dictionary : nullptr};
  uint64_t total = 0;
  for (const auto& page : chunk.pages) {
    decode_page_into(format, page.bytes, page.value_count, out);
    total += page.value_count;
  }
  if (total != chunk.value_count || chunk.presence.size() != chunk.value_count) {
    fail(ErrorCode::kCorruptChunk, "page value counts disagree with chunk length");
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (!chunk.presence.get(i)) out.mark_null(i);
  }
  return out;
}

Value decode_at(const EncodedChunk& chunk, uint64_t i) {
  if (i >= chunk.value_count) {
    fail(ErrorCode::kIndexError, "row " + std::to_string(i) + " out of range for chunk of " +
                                     std::to_string(chunk.value_count));
  }
  if (!chunk.presence.get(i)) return Value::null();
  const size_t page = i / kPageValues;
  if (page >= chunk.pages.size()) fail(ErrorCode::kCorruptChunk, "missing page");
  const PageFormat format{chunk.type, chunk.kind, chunk.dictionary ? &*chunk.dictionary : nullptr};
  const uint32_t pos = static_cast<uint32_t>(i % kPageValues);
  ColumnVector one(chunk.type);
  gather_page_into(format, chunk.pages[page].bytes, chunk.pages[page].value_count, std::span(&pos, 1), one);
  return one.get(0);
}

std::vector<uint8_t> serialize_dictionary(const Dictionary& dict) {
  std::vector<uint8_t> out;
  ByteWriter w(out);
  w.put<uint32_t>(static_cast<uint32_t>(dict.size()));
  w.put_u8(dict.sorted ? 1 : 0);
  write_plain(dict.entries, 0, dict.size(), out);
  return out;
}

Dictionary deserialize_dictionary(const ColumnType& type, std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::kCorruptChunk);
  const uint32_t n = r.get<uint32_t>();
  const uint8_t sorted = r.get_u8();
  if (sorted > 1) r.corrupt("bad dictionary flag");
  Dictionary dict{ColumnVector(type), sorted == 1};
  PlainView view(type, bytes.subspan(r.position()), n);
  dict.entries.reserve(n);
  for (uint32_t i = 0; i < n; ++i) view.append(i, dict.entries);
  return dict;
}

KeyTranslation dict_translate(const Dictionary& dict, const Predicate& p) {
  const size_t n = dict.size();
  auto lower_bound = [&](const Value& x) {
    size_t lo = 0, hi = n;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (compare_values(dict.entries.get(mid), x) < 0) lo = mid + 1; else hi = mid;
    }
    return lo;
  };
  auto upper_bound = [&](const Value& x) {
    size_t lo = 0, hi = n;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (compare_values(dict.entries.get(mid), x) <= 0) lo = mid + 1; else hi = mid;
    }
    return lo;
  };
  auto key = [](size_t k) { return static_cast<uint32_t>(k); };

  if (p.op == CompareOp::kEq) {
    if (dict.sorted) {
      const size_t k = lower_bound(p.operand);
      if (k < n && compare_values(dict.entries.get(k), p.operand) == 0) return KeyPredicate{CompareOp::kEq, key(k), 0};
      return NoMatch{};
    }
    for (size_t k = 0; k < n; ++k) {
      if (compare_values(dict.entries.get(k), p.operand) == 0) return KeyPredicate{CompareOp::kEq, key(k), 0};
    }
    return NoMatch{};
  }
  if (!dict.sorted) return Unsupported{};
  switch (p.op) {
    case CompareOp::kGt: {
      const size_t k = upper_bound(p.operand);
      if (k == n) return NoMatch{};
      return KeyPredicate{CompareOp::kGe, key(k), 0};
    }
    case CompareOp::kGe: {
      const size_t k = lower_bound(p.operand);
      if (k == n) return NoMatch{};
      return KeyPredicate{CompareOp::kGe, key(k), 0};
    }
    case CompareOp::kLt: {
      const size_t k = lower_bound(p.operand);
      if (k == 0) return NoMatch{};
      return KeyPredicate{CompareOp::kLt, key(k), 0};
    }
    case CompareOp::kLe: {
      const size_t k = upper_bound(p.operand);
      if (k == 0) return NoMatch{};
      return KeyPredicate{CompareOp::kLt, key(k), 0};
    }
    case CompareOp::kBetween: {
      const size_t lo = lower_bound(p.operand);
      const size_t hi = upper_bound(p.operand_hi);
      if (lo >= hi) return NoMatch{};
      return KeyPredicate{CompareOp::kBetween, key(lo), key(hi - 1)};
    }
    case CompareOp::kEq: break;
  }
  return Unsupported{};
}

bool is_known_policy(const std::string& policy) {
  return policy == "parquet-like" || policy == "orc-like" || policy == "arrow-like" || policy == "arrow-like-dict";
}

EncodingKind choose_encoding(const ColumnType& t, const ColumnStats& s, const std::string& policy) {
  if (!is_known_policy(policy)) fail(ErrorCode::kConfigError, "unknown encoding policy '" + policy + "'");
  const bool dict_fallback = s.distinct_ratio() > kDictFallbackRatio || s.distinct_bytes > kDictionaryPageLimit;
  if (policy == "parquet-like") {
    return dict_fallback ? EncodingKind::plain() : EncodingKind::dict(false);
  }
  if (policy == "orc-like") {
    if (t.is_integer()) return EncodingKind::rle();
    if (t.id == TypeId::kUtf8) return dict_fallback ? EncodingKind::plain() : EncodingKind::dict_rle(true);
    return EncodingKind::plain();
  }
  if (policy == "arrow-like-dict" && t.id == TypeId::kUtf8) return EncodingKind::dict(false);
  return EncodingKind::plain();
}

}  // namespace colf
