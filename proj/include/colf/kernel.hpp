#pragma once

#include <cstdint>
#include <span>

#include "colf/bitvector.hpp"
#include "colf/encoding.hpp"

namespace colf {

inline constexpr unsigned kMaxPackedKernelWidth = 32;

/// Bit i set iff packed value i satisfies `kp`. Unpacks and compares one value at a time.
/// Throws kCorruptChunk when the payload is shorter than packed_bytes(count, width).
BitVector filter_packed_scalar(std::span<const uint8_t> payload, size_t count, unsigned width,
                               const KeyPredicate& kp);

/// Same result as filter_packed_scalar. Widths 1..32 evaluate 64 values per step into one mask word,
/// with OpenMP over steps on large inputs; other widths use the scalar path.
BitVector filter_packed(std::span<const uint8_t> payload, size_t count, unsigned width, const KeyPredicate& kp);

/// Forces the word-parallel path to run single-threaded.
BitVector filter_packed_serial(std::span<const uint8_t> payload, size_t count, unsigned width,
                               const KeyPredicate& kp);

}  // namespace colf
