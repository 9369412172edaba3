#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "colf/bitvector.hpp"
#include "colf/column.hpp"
#include "colf/predicate.hpp"
#include "colf/stats.hpp"

namespace colf {

inline constexpr uint32_t kPageValues = 4096;

enum class EncodingTag : uint8_t {
  kPlain = 0,
  kBitPack = 1,
  kDict = 2,
  kRle = 3,
  kDictRle = 4,
  kDeltaFor = 5,
  kScaledInt = 6,
};

/// Encoding with its parameters. When passed to encode_chunk, a zero width (BitPack) and the
/// DeltaFor reference/width are resolved from the data; the chunk carries the resolved kind.
struct EncodingKind {
  EncodingTag tag = EncodingTag::kPlain;
  uint8_t width = 0;              // BitPack, DeltaFor; dictionary key width for Dict
  int64_t reference = 0;          // DeltaFor
  bool order_preserving = false;  // Dict, DictRle
  uint8_t scale = 0;              // ScaledInt: values stored as round(v * 10^scale)

  static EncodingKind plain() { return {}; }
  static EncodingKind bitpack(uint8_t width = 0) { return {EncodingTag::kBitPack, width, 0, false, 0}; }
  static EncodingKind dict(bool sorted) { return {EncodingTag::kDict, 0, 0, sorted, 0}; }
  static EncodingKind rle() { return {EncodingTag::kRle, 0, 0, false, 0}; }
  static EncodingKind dict_rle(bool sorted) { return {EncodingTag::kDictRle, 0, 0, sorted, 0}; }
  static EncodingKind delta_for() { return {EncodingTag::kDeltaFor, 0, 0, false, 0}; }
  static EncodingKind scaled_int(uint8_t scale) { return {EncodingTag::kScaledInt, 0, 0, false, scale}; }

  bool uses_dictionary() const { return tag == EncodingTag::kDict || tag == EncodingTag::kDictRle; }
  /// e.g. "plain", "bitpack(3)", "dict(sorted)", "delta_for(100,2)", "scaled_int(4)".
  std::string to_string() const;
  /// Parses the short names: plain, bitpack, dict, dict-sorted, rle, dict-rle, dict-rle-sorted,
  /// delta-for, scaled-int-N.
  static EncodingKind parse(const std::string& name);

  friend bool operator==(const EncodingKind&, const EncodingKind&) = default;
};

/// True when `kind` can encode columns of type `t`.
bool encoding_supports(const EncodingKind& kind, const ColumnType& t);

/// Distinct values of a chunk. When sorted, entries are strictly ascending under the total order.
struct Dictionary {
  ColumnVector entries;
  bool sorted = false;

  size_t size() const { return entries.size(); }
  /// Bit width of the keys referencing this dictionary (at least 1).
  unsigned key_width() const;

  friend bool operator==(const Dictionary&, const Dictionary&) = default;
};

struct EncodedPage {
  uint32_t value_count = 0;
  std::vector<uint8_t> bytes;

  friend bool operator==(const EncodedPage&, const EncodedPage&) = default;
};

/// One column's values for one row batch in encoded form. Page p covers rows
/// [p * kPageValues, min((p + 1) * kPageValues, value_count)).
struct EncodedChunk {
  ColumnType type;
  EncodingKind kind;
  BitVector presence;  // 1 = present
  std::optional<Dictionary> dictionary;
  std::vector<EncodedPage> pages;
  uint64_t value_count = 0;
  ColumnStats stats;

  size_t payload_bytes() const;

  friend bool operator==(const EncodedChunk&, const EncodedChunk&) = default;
};

/// What a page decoder needs besides the page bytes.
struct PageFormat {
  ColumnType type;
  EncodingKind kind;
  const Dictionary* dictionary = nullptr;
};

/// Throws kTypeError when the kind does not fit the type, kPrecisionError for non-finite or
/// out-of-range ScaledInt input, kCardinalityError past 2^32 dictionary entries.
EncodedChunk encode_chunk(const ColumnVector& values, EncodingKind kind);
EncodedChunk encode_chunk(const ColumnType& type, std::span<const Value> values, EncodingKind kind);

/// Throws kCorruptChunk when a payload is truncated or malformed.
ColumnVector decode_chunk(const EncodedChunk& chunk);

/// Throws kIndexError when i >= value_count.
Value decode_at(const EncodedChunk& chunk, uint64_t i);

/// Appends the `value_count` values of one page to `out`, all marked present. The caller applies nulls.
void decode_page_into(const PageFormat& format, std::span<const uint8_t> bytes, uint32_t value_count,
                      ColumnVector& out);
/// Appends the values at the ascending page-relative `positions`, all marked present.
void gather_page_into(const PageFormat& format, std::span<const uint8_t> bytes, uint32_t value_count,
                      std::span<const uint32_t> positions, ColumnVector& out);
/// Dictionary keys of a Dict or DictRle page.
std::vector<uint32_t> page_keys(const PageFormat& format, std::span<const uint8_t> bytes, uint32_t value_count);

/// Serialized dictionary page: entry count (uint32 LE), sorted flag (uint8), entries in plain layout.
std::vector<uint8_t> serialize_dictionary(const Dictionary& dict);
Dictionary deserialize_dictionary(const ColumnType& type, std::span<const uint8_t> bytes);

/// Predicate over dictionary keys; Between is inclusive.
struct KeyPredicate {
  CompareOp op = CompareOp::kEq;
  uint32_t key = 0;
  uint32_t key_hi = 0;

  bool matches(uint32_t k) const {
    switch (op) {
      case CompareOp::kEq: return k == key;
      case CompareOp::kGt: return k > key;
      case CompareOp::kLt: return k < key;
      case CompareOp::kGe: return k >= key;
      case CompareOp::kLe: return k <= key;
      case CompareOp::kBetween: return k >= key && k <= key_hi;
    }
    return false;
  }

  friend bool operator==(const KeyPredicate&, const KeyPredicate&) = default;
};

struct NoMatch {
  friend bool operator==(const NoMatch&, const NoMatch&) = default;
};
struct Unsupported {
  friend bool operator==(const Unsupported&, const Unsupported&) = default;
};
using KeyTranslation = std::variant<KeyPredicate, NoMatch, Unsupported>;

/// Maps a value predicate onto the key domain of `dict`. Range operators need a sorted dictionary.
KeyTranslation dict_translate(const Dictionary& dict, const Predicate& p);

/// Named selection policies: parquet-like, orc-like, arrow-like, arrow-like-dict.
inline constexpr double kDictFallbackRatio = 0.8;
inline constexpr uint64_t kDictionaryPageLimit = 1 << 20;

/// Throws kConfigError for an unknown policy name.
EncodingKind choose_encoding(const ColumnType& t, const ColumnStats& s, const std::string& policy);
bool is_known_policy(const std::string& policy);

}  // namespace colf
