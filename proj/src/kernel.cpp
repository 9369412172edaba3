#include "colf/kernel.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <utility>

#include "colf/bitpack.hpp"
#include "colf/error.hpp"

namespace colf {

static_assert(std::endian::native == std::endian::little, "packed words are read as little-endian");

namespace {

constexpr size_t kParallelGroups = 2048;

void check_payload(std::span<const uint8_t> payload, size_t count, unsigned width) {
  if (payload.size() < packed_bytes(count, width)) fail(ErrorCode::kCorruptChunk, "packed payload is truncated");
}

/// Inclusive key interval [lo, lo + span] accepted by kp within [0, 2^width).
struct KeyRange {
  uint64_t lo = 0;
  uint64_t span = 0;
  bool empty = false;
};

KeyRange key_range(const KeyPredicate& kp, unsigned width) {
  const uint64_t max = low_mask(width);
  const uint64_t k = kp.key;
  uint64_t lo = 0;
  uint64_t hi = max;
  switch (kp.op) {
    case CompareOp::kEq: lo = hi = k; break;
    case CompareOp::kGt:
      if (k >= max) return {0, 0, true};
      lo = k + 1;
      break;
    case CompareOp::kGe: lo = k; break;
    case CompareOp::kLt:
      if (k == 0) return {0, 0, true};
      hi = k - 1;
      break;
    case CompareOp::kLe: hi = k; break;
    case CompareOp::kBetween:
      lo = k;
      hi = kp.key_hi;
      break;
  }
  if (hi > max) hi = max;
  if (lo > hi) return {0, 0, true};
  return {lo, hi - lo, false};
}

template <unsigned W>
uint64_t match_group(const uint64_t* words, uint64_t lo, uint64_t span) {
  constexpr uint64_t mask = (uint64_t{1} << W) - 1;
  uint64_t m = 0;
#pragma GCC unroll 64
  for (unsigned j = 0; j < 64; ++j) {
    const unsigned bit = j * W;
    const unsigned w = bit >> 6;
    const unsigned off = bit & 63;
    uint64_t v = words[w] >> off;
    if (off + W > 64) v |= words[w + 1] << (64 - off);
    v &= mask;
    m |= static_cast<uint64_t>((v - lo) <= span) << j;
  }
  return m;
}

template <unsigned W>
void filter_width(const uint8_t* data, size_t count, uint64_t lo, uint64_t span, uint64_t* out, bool parallel) {
  const size_t groups = count / 64;
  const long long n = static_cast<long long>(groups);
#pragma omp parallel for schedule(static) if (parallel && groups >= kParallelGroups)
  for (long long g = 0; g < n; ++g) {
    uint64_t words[W];
    std::memcpy(words, data + static_cast<size_t>(g) * W * 8, W * 8);
    out[g] = match_group<W>(words, lo, span);
  }
  const size_t tail = count - groups * 64;
  if (tail) {
    uint64_t words[W] = {};
    std::memcpy(words, data + groups * W * 8, packed_bytes(tail, W));
    out[groups] = match_group<W>(words, lo, span) & low_mask(static_cast<unsigned>(tail));
  }
}

using FilterFn = void (*)(const uint8_t*, size_t, uint64_t, uint64_t, uint64_t*, bool);

template <size_t... I>
constexpr std::array<FilterFn, sizeof...(I)> make_table(std::index_sequence<I...>) {
  return {&filter_width<static_cast<unsigned>(I + 1)>...};
}

constexpr auto kFilterTable = make_table(std::make_index_sequence<kMaxPackedKernelWidth>{});

BitVector filter_fast(std::span<const uint8_t> payload, size_t count, unsigned width, const KeyPredicate& kp,
                      bool parallel) {
  if (width == 0 || width > kMaxPackedKernelWidth) return filter_packed_scalar(payload, count, width, kp);
  check_payload(payload, count, width);
  BitVector out(count);
  const KeyRange r = key_range(kp, width);
  if (r.empty || count == 0) return out;
  kFilterTable[width - 1](payload.data(), count, r.lo, r.span, out.mutable_words().data(), parallel);
  return out;
}

}  // namespace

BitVector filter_packed_scalar(std::span<const uint8_t> payload, size_t count, unsigned width,
                               const KeyPredicate& kp) {
  check_payload(payload, count, width);
  BitVector out(count);
  for (size_t i = 0; i < count; ++i) {
    const uint64_t v = unpack_one(payload, i, width);
    if (v <= UINT32_MAX && kp.matches(static_cast<uint32_t>(v))) out.set(i);
  }
  return out;
}

BitVector filter_packed(std::span<const uint8_t> payload, size_t count, unsigned width, const KeyPredicate& kp) {
  return filter_fast(payload, count, width, kp, true);
}

BitVector filter_packed_serial(std::span<const uint8_t> payload, size_t count, unsigned width,
                               const KeyPredicate& kp) {
  return filter_fast(payload, count, width, kp, false);
}

}  // namespace colf
