#pragma once

#include <optional>

#include "colf/column.hpp"

namespace colf {

/// Exact per-chunk statistics used by encoding selection. distinct_count covers non-null values only.
struct ColumnStats {
  uint64_t distinct_count = 0;
  uint64_t row_count = 0;
  uint64_t max_run_length = 0;
  std::optional<Value> min;
  std::optional<Value> max;
  uint64_t null_count = 0;
  /// Plain-encoded byte size of the distinct values, i.e. the dictionary page a Dict encoding would write.
  uint64_t distinct_bytes = 0;

  uint64_t non_null_count() const { return row_count - null_count; }
  double distinct_ratio() const {
    return non_null_count() == 0 ? 0.0 : double(distinct_count) / double(non_null_count());
  }

  friend bool operator==(const ColumnStats&, const ColumnStats&) = default;
};

/// Runs count consecutive equal slots; a stretch of nulls is one run.
ColumnStats compute_stats(const ColumnVector& values);

}  // namespace colf
