#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace colf {

enum class CodecKind : uint8_t { kStore = 0, kLz4Like = 1, kDeflateLike = 2 };

std::string codec_name(CodecKind codec);
/// Accepts store, lz4, deflate. Throws kConfigError otherwise.
CodecKind parse_codec(const std::string& name);

/// Output of block compression. When the requested codec does not shrink the input, the block
/// is stored raw: codec == kStore, raw_fallback == true, payload == input.
struct CompressedBlock {
  CodecKind codec = CodecKind::kStore;
  bool raw_fallback = false;
  uint32_t uncompressed_len = 0;
  uint32_t compressed_len = 0;
  std::vector<uint8_t> payload;

  friend bool operator==(const CompressedBlock&, const CompressedBlock&) = default;
};

/// Standalone block framing: flags byte (codec id, bit 7 = raw_fallback), uncompressed_len, compressed_len.
inline constexpr size_t kBlockHeaderBytes = 9;

CompressedBlock compress(std::span<const uint8_t> bytes, CodecKind requested);
/// Throws kCorruptBlock on a malformed stream or a length mismatch.
std::vector<uint8_t> decompress(const CompressedBlock& block);

std::vector<uint8_t> serialize_block(const CompressedBlock& block);
CompressedBlock deserialize_block(std::span<const uint8_t> bytes);

/// LZ77 byte compressor in the LZ4 block format (token, literals, 16-bit offset, match length).
std::vector<uint8_t> lz4_like_compress(std::span<const uint8_t> input);
/// Throws kCorruptBlock when the stream is malformed or does not expand to `expected_len` bytes.
std::vector<uint8_t> lz4_like_decompress(std::span<const uint8_t> input, size_t expected_len);

}  // namespace colf
