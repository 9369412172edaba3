#pragma once

#include <optional>
#include <span>

#include "colf/column.hpp"
#include "colf/predicate.hpp"
#include "colf/types.hpp"

namespace colf {

inline constexpr size_t kZoneMapStringPrefix = 16;

/// Min/max/null-count summary of one zone (chunk or page). min and max are absent iff every value is null.
/// Strings longer than 16 bytes are truncated; a truncated max bounds every value's 16-byte prefix.
struct ZoneMap {
  std::optional<Value> min;
  std::optional<Value> max;
  uint64_t null_count = 0;
  uint64_t row_count = 0;
  bool min_truncated = false;
  bool max_truncated = false;

  bool all_null() const { return !min.has_value(); }

  friend bool operator==(const ZoneMap&, const ZoneMap&) = default;
};

/// Throws kEmptyChunk on empty input.
ZoneMap zone_map_build(std::span<const Value> values);
/// Zone map over rows [begin, end) of a decoded column.
ZoneMap zone_map_build(const ColumnVector& column, size_t begin, size_t end);

struct MinMax {
  std::optional<Value> min;
  std::optional<Value> max;
};

/// Untruncated min/max of the non-null values in rows [begin, end); both absent when all are null.
MinMax column_min_max(const ColumnVector& column, size_t begin, size_t end);

/// False only when no value inside the zone can satisfy `p`.
bool zone_map_may_match(const ZoneMap& zone, const Predicate& p);

}  // namespace colf
