#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colf/memrep.hpp"
#include "colf/predicate.hpp"

namespace colf {

enum class Strategy : uint8_t {
  kPlainFull,        // decode every predicate column, then evaluate
  kPlainDictDirect,  // whole chunks; dictionary chunks compared on keys; no zone maps
  kLazyStream,       // page-at-a-time decode and evaluate; no pruning
  kLazyIm,           // batch, chunk and page zone maps before decoding
  kLazyImDirect,     // LazyIm plus key-domain evaluation on dictionary chunks
  kLazyImDirectVec,  // LazyImDirect through the packed kernel
  kChunkSkip,        // chunk zone maps only; surviving chunks decoded whole
};

const std::vector<Strategy>& all_strategies();
std::string strategy_name(Strategy s);
/// Throws kConfigError listing the valid names.
Strategy parse_strategy(const std::string& name);

/// A zone-map prune: no row of the chunk (page unset) or page may satisfy `predicate`.
struct SkipEvent {
  size_t batch = 0;
  size_t column = 0;  // schema index in the file
  std::optional<size_t> page;
  Predicate predicate;
};

struct FilterResult {
  BitVector bits;
  DecodeStats stats;
  /// A direct strategy evaluated some chunk on decoded values instead of keys.
  bool fallback = false;
  std::vector<SkipEvent> skips;
};

/// Bit i set iff row i satisfies every predicate; nulls fail. Predicate columns need not be projected.
/// Throws kNameError for unknown columns and kTypeError for ill-typed operands.
FilterResult filter(const LazyColumns& source, const PredicateList& preds, Strategy strategy);
BitVector filter(const PlainColumns& source, const PredicateList& preds);

/// Order in which the zoned strategies evaluate `preds`: fewest zone-map survivors first, ties by position.
std::vector<size_t> predicate_order(const FileFooter& footer, const PredicateList& preds);

enum class MaskMode : uint8_t { kBulk, kRecordSkip, kChunkSkip };

std::string mask_mode_name(MaskMode m);

struct MaskResult {
  PlainColumns table;
  DecodeStats stats;
};

/// Rows of the projected columns whose bit is set. Throws kShapeError on a length mismatch.
MaskResult apply_mask(const LazyColumns& source, const BitVector& bv, MaskMode mode);
PlainColumns apply_mask(const PlainColumns& source, const BitVector& bv);

/// Throws kNameError for unknown columns.
LoadResult project(const LazyColumns& source, const std::vector<std::string>& columns);
PlainColumns project(const PlainColumns& source, const std::vector<std::string>& columns);

struct SubexpressionQuery {
  std::string name;
  std::vector<std::string> projection;
  PredicateList predicates;
};

struct SubexpressionResult {
  PlainColumns table;
  DecodeStats stats;
  bool fallback = false;
  /// Milliseconds. LazyStream interleaves loading with evaluation and reports only the total.
  std::optional<double> load_ms;
  std::optional<double> compute_ms;
  double total_ms = 0;
};

SubexpressionResult eval_subexpression(const SubexpressionQuery& q, std::shared_ptr<const ByteSource> file,
                                       Strategy strategy);

/// Row-at-a-time scan over decoded values; the oracle for every strategy.
PlainColumns reference_execute(const SubexpressionQuery& q, const PlainColumns& table);
BitVector reference_filter(const PlainColumns& table, const PredicateList& preds);

}  // namespace colf
