#pragma once

#include <atomic>
#include <cstdint>
#include <string>

namespace colf {

/// Snapshot of decode instrumentation. bytes_read counts page bytes only; footer reads are
/// tracked separately so pruning over metadata can be shown to touch no data.
struct DecodeStats {
  uint64_t values_decoded = 0;
  uint64_t pages_read = 0;
  uint64_t chunks_opened = 0;
  uint64_t chunks_skipped = 0;
  uint64_t batches_skipped = 0;
  uint64_t bytes_read = 0;
  uint64_t footer_bytes_read = 0;

  DecodeStats& operator+=(const DecodeStats& o);
  friend DecodeStats operator-(DecodeStats a, const DecodeStats& b);
  friend bool operator==(const DecodeStats&, const DecodeStats&) = default;

  std::string to_string() const;
};

/// Monotone counters shared by concurrent readers. Totals do not depend on interleaving.
class DecodeCounters {
 public:
  void add_values(uint64_t n) { values_decoded_.fetch_add(n, std::memory_order_relaxed); }
  void add_page(uint64_t bytes) {
    pages_read_.fetch_add(1, std::memory_order_relaxed);
    bytes_read_.fetch_add(bytes, std::memory_order_relaxed);
  }
  void add_chunk_opened() { chunks_opened_.fetch_add(1, std::memory_order_relaxed); }
  void add_chunk_skipped(uint64_t n = 1) { chunks_skipped_.fetch_add(n, std::memory_order_relaxed); }
  void add_batch_skipped() { batches_skipped_.fetch_add(1, std::memory_order_relaxed); }
  void add_footer_bytes(uint64_t n) { footer_bytes_read_.fetch_add(n, std::memory_order_relaxed); }

  DecodeStats snapshot() const;

 private:
  std::atomic<uint64_t> values_decoded_{0};
  std::atomic<uint64_t> pages_read_{0};
  std::atomic<uint64_t> chunks_opened_{0};
  std::atomic<uint64_t> chunks_skipped_{0};
  std::atomic<uint64_t> batches_skipped_{0};
  std::atomic<uint64_t> bytes_read_{0};
  std::atomic<uint64_t> footer_bytes_read_{0};
};

}  // namespace colf
