#include "colf/stats.hpp"

#include "colf/zone_map.hpp"

#include <bit>
#include <cstring>
#include <string_view>
#include <unordered_set>

namespace colf {

namespace {

template <typename T, typename Key, typename KeyFn, typename SizeFn>
void scan(const ColumnVector& col, const std::vector<T>& data, KeyFn key_of, SizeFn bytes_of, ColumnStats& s) {
  std::unordered_set<Key> seen;
  const size_t n = col.size();
  uint64_t run = 0;
  bool prev_null = false;
  Key prev{};
  for (size_t i = 0; i < n; ++i) {
    const bool null = col.is_null(i);
    Key k = null ? Key{} : key_of(data, i);
    if (i > 0 && null == prev_null && (null || k == prev)) {
      ++run;
    } else {
      run = 1;
    }
    s.max_run_length = std::max(s.max_run_length, run);
    prev_null = null;
    if (!null) {
      if (seen.insert(k).second) s.distinct_bytes += bytes_of(data, i);
      prev = std::move(k);
    }
  }
  s.distinct_count = seen.size();
}

}  // namespace

ColumnStats compute_stats(const ColumnVector& col) {
  ColumnStats s;
  s.row_count = col.size();
  s.null_count = col.null_count();
  const size_t width = col.type().fixed_width();
  auto fixed = [width](const auto&, size_t) -> uint64_t { return width; };
  switch (col.type().id) {
    case TypeId::kInt32:
      scan<int32_t, int32_t>(col, col.values<int32_t>(), [](const auto& d, size_t i) { return d[i]; }, fixed, s);
      break;
    case TypeId::kInt64:
      scan<int64_t, int64_t>(col, col.values<int64_t>(), [](const auto& d, size_t i) { return d[i]; }, fixed, s);
      break;
    case TypeId::kFloat64:
      scan<double, uint64_t>(
          col, col.values<double>(), [](const auto& d, size_t i) { return std::bit_cast<uint64_t>(d[i]); },
          fixed, s);
      break;
    case TypeId::kBool:
      scan<uint8_t, uint8_t>(col, col.values<uint8_t>(), [](const auto& d, size_t i) { return d[i]; }, fixed, s);
      break;
    case TypeId::kUtf8:
      scan<std::string, std::string_view>(
          col, col.values<std::string>(), [](const auto& d, size_t i) { return std::string_view(d[i]); },
          [](const auto& d, size_t i) -> uint64_t { return 4 + d[i].size(); }, s);
      break;
    case TypeId::kFixedVector: {
      const size_t dim = col.type().dim;
      scan<double, std::string_view>(
          col, col.values<double>(),
          [dim](const auto& d, size_t i) {
            return std::string_view(reinterpret_cast<const char*>(&d[i * dim]), dim * sizeof(double));
          },
          fixed, s);
      break;
    }
  }
  auto mm = column_min_max(col, 0, col.size());
  s.min = std::move(mm.min);
  s.max = std::move(mm.max);
  return s;
}

}  // namespace colf
