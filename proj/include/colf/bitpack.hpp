#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace colf {

/// Number of bits needed to represent v (0 for v == 0).
inline unsigned bit_width_of(uint64_t v) {
  unsigned w = 0;
  while (v) {
    ++w;
    v >>= 1;
  }
  return w;
}

inline uint64_t low_mask(unsigned width) { return width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1; }

inline size_t packed_bytes(size_t count, unsigned width) { return (count * width + 7) / 8; }

/// Appends `values` packed LSB-first at `width` bits each; the output is padded to a byte boundary.
void pack_bits(std::span<const uint64_t> values, unsigned width, std::vector<uint8_t>& out);

/// Value i of a packed stream. `bytes` must hold at least packed_bytes(i + 1, width) bytes.
uint64_t unpack_one(std::span<const uint8_t> bytes, size_t i, unsigned width);

/// Unpacks the first `count` values.
void unpack_bits(std::span<const uint8_t> bytes, size_t count, unsigned width, std::vector<uint64_t>& out);

}  // namespace colf
