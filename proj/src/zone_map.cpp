#include "colf/zone_map.hpp"

#include <algorithm>

namespace colf {

namespace {

void finish_strings(ZoneMap& z) {
  if (!z.min || z.min->storage().index() != 4) return;
  if (z.min->as_str().size() > kZoneMapStringPrefix) {
    z.min = Value::str(z.min->as_str().substr(0, kZoneMapStringPrefix));
    z.min_truncated = true;
  }
  if (z.max->as_str().size() > kZoneMapStringPrefix) {
    z.max = Value::str(z.max->as_str().substr(0, kZoneMapStringPrefix));
    z.max_truncated = true;
  }
}

std::string prefix_of(const std::string& s) { return s.substr(0, std::min(s.size(), kZoneMapStringPrefix)); }

// Whether some zone value can be >= x (strict: > x).
bool may_reach_above(const ZoneMap& z, const Value& x, bool strict) {
  if (z.max_truncated) {
    // Every value's 16-byte prefix is <= max, so values can exceed x unless prefix(x) > max.
    return compare_values(Value::str(prefix_of(x.as_str())), *z.max) <= 0;
  }
  auto c = compare_values(*z.max, x);
  return strict ? c > 0 : c >= 0;
}

// Whether some zone value can be <= x (strict: < x). A truncated min is still a lower bound.
bool may_reach_below(const ZoneMap& z, const Value& x, bool strict) {
  auto c = compare_values(*z.min, x);
  return strict ? c < 0 : c <= 0;
}

}  // namespace

ZoneMap zone_map_build(std::span<const Value> values) {
  if (values.empty()) fail(ErrorCode::kEmptyChunk, "zone map over an empty sequence");
  ZoneMap z;
  z.row_count = values.size();
  for (const Value& v : values) {
    if (v.is_null()) {
      ++z.null_count;
      continue;
    }
    if (!z.min) {
      z.min = v;
      z.max = v;
      continue;
    }
    if (compare_values(v, *z.min) < 0) z.min = v;
    if (compare_values(v, *z.max) > 0) z.max = v;
  }
  finish_strings(z);
  return z;
}

namespace {

template <typename T, typename Less>
void scan_minmax(const std::vector<T>& data, const BitVector& valid, size_t begin, size_t end, Less less,
                 const T*& lo, const T*& hi) {
  for (size_t i = begin; i < end; ++i) {
    if (!valid.get(i)) continue;
    if (!lo) {
      lo = hi = &data[i];
      continue;
    }
    if (less(data[i], *lo)) lo = &data[i];
    if (less(*hi, data[i])) hi = &data[i];
  }
}

}  // namespace

MinMax column_min_max(const ColumnVector& column, size_t begin, size_t end) {
  MinMax out;
  const auto& valid = column.validity();
  switch (column.type().id) {
    case TypeId::kInt32: {
      const int32_t *lo = nullptr, *hi = nullptr;
      scan_minmax(column.values<int32_t>(), valid, begin, end, std::less<>(), lo, hi);
      if (lo) out = {Value::i32(*lo), Value::i32(*hi)};
      break;
    }
    case TypeId::kInt64: {
      const int64_t *lo = nullptr, *hi = nullptr;
      scan_minmax(column.values<int64_t>(), valid, begin, end, std::less<>(), lo, hi);
      if (lo) out = {Value::i64(*lo), Value::i64(*hi)};
      break;
    }
    case TypeId::kFloat64: {
      const double *lo = nullptr, *hi = nullptr;
      scan_minmax(column.values<double>(), valid, begin, end,
                  [](double a, double b) { return float_order_key(a) < float_order_key(b); }, lo, hi);
      if (lo) out = {Value::f64(*lo), Value::f64(*hi)};
      break;
    }
    case TypeId::kUtf8: {
      const std::string *lo = nullptr, *hi = nullptr;
      scan_minmax(column.values<std::string>(), valid, begin, end, std::less<>(), lo, hi);
      if (lo) out = {Value::str(*lo), Value::str(*hi)};
      break;
    }
    case TypeId::kBool: {
      const uint8_t *lo = nullptr, *hi = nullptr;
      scan_minmax(column.values<uint8_t>(), valid, begin, end, std::less<>(), lo, hi);
      if (lo) out = {Value::boolean(*lo != 0), Value::boolean(*hi != 0)};
      break;
    }
    case TypeId::kFixedVector: {
      for (size_t i = begin; i < end; ++i) {
        if (column.is_null(i)) continue;
        Value v = column.get(i);
        if (!out.min) {
          out = {v, v};
          continue;
        }
        if (compare_values(v, *out.min) < 0) out.min = v;
        if (compare_values(v, *out.max) > 0) out.max = std::move(v);
      }
      break;
    }
  }
  return out;
}

ZoneMap zone_map_build(const ColumnVector& column, size_t begin, size_t end) {
  if (begin >= end) fail(ErrorCode::kEmptyChunk, "zone map over an empty range");
  ZoneMap z;
  z.row_count = end - begin;
  z.null_count = z.row_count - column.validity().count_range(begin, end);
  auto mm = column_min_max(column, begin, end);
  z.min = std::move(mm.min);
  z.max = std::move(mm.max);
  finish_strings(z);
  return z;
}

bool zone_map_may_match(const ZoneMap& zone, const Predicate& p) {
  if (zone.all_null()) return false;
  switch (p.op) {
    case CompareOp::kEq:
      if ((zone.min_truncated || zone.max_truncated) && p.operand.as_str().size() > kZoneMapStringPrefix) {
        return true;
      }
      return may_reach_below(zone, p.operand, false) && may_reach_above(zone, p.operand, false);
    case CompareOp::kGt: return may_reach_above(zone, p.operand, true);
    case CompareOp::kGe: return may_reach_above(zone, p.operand, false);
    case CompareOp::kLt: return may_reach_below(zone, p.operand, true);
    case CompareOp::kLe: return may_reach_below(zone, p.operand, false);
    case CompareOp::kBetween:
      return may_reach_above(zone, p.operand, false) && may_reach_below(zone, p.operand_hi, false);
  }
  return true;
}

}  // namespace colf
