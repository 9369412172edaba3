#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace colf {

/// Packed per-row boolean mask. Bit i lives in word i / 64 at position i % 64; bits past size() stay zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t size, bool value = false);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void clear(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  void assign(size_t i, bool v) { v ? set(i) : clear(i); }
  void push_back(bool v);

  size_t popcount() const;
  /// Set bits in [begin, end).
  size_t count_range(size_t begin, size_t end) const;
  bool any_in_range(size_t begin, size_t end) const;
  void clear_range(size_t begin, size_t end);
  void set_range(size_t begin, size_t end);

  /// Overwrites bits [offset, offset + fragment.size()) with `fragment`.
  void splice(size_t offset, const BitVector& fragment);
  BitVector slice(size_t begin, size_t end) const;

  BitVector& operator&=(const BitVector& other);

  double selectivity() const { return size_ == 0 ? 0.0 : double(popcount()) / double(size_); }

  /// Indices of set bits in ascending order.
  std::vector<uint32_t> set_positions() const;

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> mutable_words() { return words_; }

  /// LSB-first byte serialization, ceil(size/8) bytes.
  std::vector<uint8_t> to_bytes() const;
  static BitVector from_bytes(std::span<const uint8_t> bytes, size_t size);

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  void trim();

  size_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace colf
