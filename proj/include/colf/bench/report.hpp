#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "colf/column.hpp"
#include "colf/decode_stats.hpp"

namespace colf::bench {

inline constexpr int kReportSchemaVersion = 1;

struct Sizes {
  uint64_t encoded = 0;     // page payloads before block compression
  uint64_t compressed = 0;  // stored page bytes, headers included
  uint64_t raw = 0;         // canonical CSV rendering
};

struct Case {
  std::string name;
  std::vector<std::pair<std::string, std::string>> config;
  Sizes sizes;
  DecodeStats stats;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::pair<std::string, double>> metrics;
  std::string checksum;  // of the result table, empty when the case has none
};

/// A correctness or directional assertion evaluated by a suite.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string suite;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Case> cases;
  std::vector<Check> checks;

  bool passed() const;
  void check(std::string name, bool ok, std::string detail = {});
};

enum class ReportFormat { kJson, kCsv };

/// Field order is fixed; reruns with the same seed differ only in timing fields.
std::string emit_report(const Report& r, ReportFormat format);

/// FNV-1a 64 of the canonical CSV rendering, as 16 hex digits.
std::string table_checksum(const PlainColumns& table);

/// Median wall time in milliseconds of `reps` runs after one warm-up run.
template <typename F>
double median_ms(int reps, F&& f) {
  f();
  std::vector<double> t;
  for (int i = 0; i < std::max(1, reps); ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(t.begin(), t.end());
  return t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
}

}  // namespace colf::bench
