#include "colf/bitpack.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace colf {

static_assert(std::endian::native == std::endian::little, "packed words are read as little-endian");

void pack_bits(std::span<const uint64_t> values, unsigned width, std::vector<uint8_t>& out) {
  const size_t nbytes = packed_bytes(values.size(), width);
  if (nbytes == 0) return;
  std::vector<uint64_t> words((values.size() * width + 63) / 64 + 1, 0);
  const uint64_t mask = low_mask(width);
  size_t bit = 0;
  for (uint64_t v : values) {
    v &= mask;
    const size_t w = bit >> 6;
    const unsigned off = bit & 63;
    words[w] |= v << off;
    if (off + width > 64) words[w + 1] |= v >> (64 - off);
    bit += width;
  }
  const size_t base = out.size();
  out.resize(base + nbytes);
  for (size_t i = 0; i < nbytes; ++i) {
    out[base + i] = static_cast<uint8_t>(words[i >> 3] >> ((i & 7) * 8));
  }
}

uint64_t unpack_one(std::span<const uint8_t> bytes, size_t i, unsigned width) {
  if (width == 0) return 0;
  const size_t bit = i * width;
  const size_t first = bit >> 3;
  const unsigned shift = bit & 7;
  const size_t span_bytes = std::min<size_t>((shift + width + 7) / 8, bytes.size() - first);
  unsigned __int128 acc = 0;
  for (size_t k = 0; k < span_bytes; ++k) {
    acc |= static_cast<unsigned __int128>(bytes[first + k]) << (8 * k);
  }
  return static_cast<uint64_t>(acc >> shift) & low_mask(width);
}

void unpack_bits(std::span<const uint8_t> bytes, size_t count, unsigned width, std::vector<uint64_t>& out) {
  const size_t base = out.size();
  out.resize(base + count, 0);
  if (width == 0 || count == 0) return;
  const size_t nbytes = packed_bytes(count, width);
  std::vector<uint64_t> words((nbytes + 7) / 8 + 1, 0);
  std::memcpy(words.data(), bytes.data(), std::min(nbytes, bytes.size()));
  const uint64_t mask = low_mask(width);
  size_t bit = 0;
  for (size_t i = 0; i < count; ++i) {
    const size_t w = bit >> 6;
    const unsigned off = bit & 63;
    uint64_t v = words[w] >> off;
    if (off + width > 64) v |= words[w + 1] << (64 - off);
    out[base + i] = v & mask;
    bit += width;
  }
}

}  // namespace colf
