#include "colf/codec.hpp"

#include <zlib.h>

#include <cstring>

#include "byte_io.hpp"
#include "colf/error.hpp"

namespace colf {

std::string codec_name(CodecKind codec) {
  switch (codec) {
    case CodecKind::kStore: return "store";
    case CodecKind::kLz4Like: return "lz4";
    case CodecKind::kDeflateLike: return "deflate";
  }
  return "?";
}

CodecKind parse_codec(const std::string& name) {
  if (name == "store" || name == "none") return CodecKind::kStore;
  if (name == "lz4") return CodecKind::kLz4Like;
  if (name == "deflate" || name == "zlib") return CodecKind::kDeflateLike;
  fail(ErrorCode::kConfigError, "unknown codec '" + name + "' (valid: store, lz4, deflate)");
}

namespace {

constexpr size_t kMinMatch = 4;
constexpr size_t kLastLiterals = 5;
constexpr size_t kHashBits = 14;
constexpr size_t kMaxOffset = 65535;

uint32_t hash4(const uint8_t* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  return (v * 2654435761u) >> (32 - kHashBits);
}

void put_length(std::vector<uint8_t>& out, size_t len) {
  while (len >= 255) {
    out.push_back(255);
    len -= 255;
  }
  out.push_back(static_cast<uint8_t>(len));
}

void emit_sequence(std::vector<uint8_t>& out, const uint8_t* literals, size_t lit_len, size_t offset,
                   size_t match_len) {
  const size_t ml = match_len >= kMinMatch ? match_len - kMinMatch : 0;
  uint8_t token = static_cast<uint8_t>((std::min<size_t>(lit_len, 15) << 4) | std::min<size_t>(ml, 15));
  out.push_back(token);
  if (lit_len >= 15) put_length(out, lit_len - 15);
  out.insert(out.end(), literals, literals + lit_len);
  if (match_len == 0) return;
  out.push_back(static_cast<uint8_t>(offset));
  out.push_back(static_cast<uint8_t>(offset >> 8));
  if (ml >= 15) put_length(out, ml - 15);
}

std::vector<uint8_t> deflate_compress(std::span<const uint8_t> input) {
  uLongf bound = compressBound(static_cast<uLong>(input.size()));
  std::vector<uint8_t> out(bound);
  if (compress2(out.data(), &bound, input.data(), static_cast<uLong>(input.size()), Z_DEFAULT_COMPRESSION) != Z_OK) {
    fail(ErrorCode::kCorruptBlock, "deflate failed");
  }
  out.resize(bound);
  return out;
}

std::vector<uint8_t> deflate_decompress(std::span<const uint8_t> input, size_t expected_len) {
  std::vector<uint8_t> out(expected_len);
  uLongf len = static_cast<uLongf>(expected_len);
  // uncompress() rejects a null destination even for empty output.
  uint8_t scratch = 0;
  int rc = uncompress(expected_len ? out.data() : &scratch, &len, input.data(), static_cast<uLong>(input.size()));
  if (rc != Z_OK || len != expected_len) fail(ErrorCode::kCorruptBlock, "deflate stream is corrupt");
  return out;
}

}  // namespace

std::vector<uint8_t> lz4_like_compress(std::span<const uint8_t> input) {
  std::vector<uint8_t> out;
  out.reserve(input.size() / 2 + 16);
  const uint8_t* base = input.data();
  const size_t n = input.size();
  size_t anchor = 0;
  if (n > kMinMatch + kLastLiterals) {
    std::vector<int64_t> table(size_t{1} << kHashBits, -1);
    size_t i = 0;
    const size_t limit = n - kLastLiterals - kMinMatch;
    while (i <= limit) {
      const uint32_t h = hash4(base + i);
      const int64_t cand = table[h];
      table[h] = static_cast<int64_t>(i);
      if (cand >= 0 && i - static_cast<size_t>(cand) <= kMaxOffset &&
          std::memcmp(base + cand, base + i, kMinMatch) == 0) {
        size_t len = kMinMatch;
        const size_t max_len = n - kLastLiterals - i;
        while (len < max_len && base[cand + len] == base[i + len]) ++len;
        emit_sequence(out, base + anchor, i - anchor, i - static_cast<size_t>(cand), len);
        i += len;
        anchor = i;
        continue;
      }
      ++i;
    }
  }
  emit_sequence(out, base + anchor, n - anchor, 0, 0);
  return out;
}

std::vector<uint8_t> lz4_like_decompress(std::span<const uint8_t> input, size_t expected_len) {
  std::vector<uint8_t> out;
  out.reserve(expected_len);
  size_t pos = 0;
  auto corrupt = [] { fail(ErrorCode::kCorruptBlock, "lz4 stream is corrupt"); };
  auto read_length = [&](size_t base_len) {
    size_t len = base_len;
    if (base_len == 15) {
      uint8_t b;
      do {
        if (pos >= input.size()) corrupt();
        b = input[pos++];
        len += b;
      } while (b == 255);
    }
    return len;
  };
  while (true) {
    if (pos >= input.size()) corrupt();
    const uint8_t token = input[pos++];
    const size_t lit_len = read_length(token >> 4);
    if (lit_len > input.size() - pos || out.size() + lit_len > expected_len) corrupt();
    out.insert(out.end(), input.begin() + static_cast<std::ptrdiff_t>(pos),
               input.begin() + static_cast<std::ptrdiff_t>(pos + lit_len));
    pos += lit_len;
    if (pos == input.size()) break;
    if (input.size() - pos < 2) corrupt();
    const size_t offset = input[pos] | (size_t{input[pos + 1]} << 8);
    pos += 2;
    const size_t match_len = read_length(token & 15) + kMinMatch;
    if (offset == 0 || offset > out.size() || out.size() + match_len > expected_len) corrupt();
    const size_t from = out.size() - offset;
    for (size_t k = 0; k < match_len; ++k) out.push_back(out[from + k]);
  }
  if (out.size() != expected_len) corrupt();
  return out;
}

CompressedBlock compress(std::span<const uint8_t> bytes, CodecKind requested) {
  CompressedBlock block;
  block.uncompressed_len = static_cast<uint32_t>(bytes.size());
  std::vector<uint8_t> packed;
  switch (requested) {
    case CodecKind::kStore: break;
    case CodecKind::kLz4Like: packed = lz4_like_compress(bytes); break;
    case CodecKind::kDeflateLike: packed = deflate_compress(bytes); break;
  }
  if (requested == CodecKind::kStore || packed.size() >= bytes.size()) {
    block.codec = CodecKind::kStore;
    block.raw_fallback = requested != CodecKind::kStore;
    block.payload.assign(bytes.begin(), bytes.end());
  } else {
    block.codec = requested;
    block.payload = std::move(packed);
  }
  block.compressed_len = static_cast<uint32_t>(block.payload.size());
  return block;
}

std::vector<uint8_t> decompress(const CompressedBlock& block) {
  if (block.compressed_len != block.payload.size()) fail(ErrorCode::kCorruptBlock, "compressed length mismatch");
  switch (block.codec) {
    case CodecKind::kStore:
      if (block.payload.size() != block.uncompressed_len) fail(ErrorCode::kCorruptBlock, "stored length mismatch");
      return block.payload;
    case CodecKind::kLz4Like: return lz4_like_decompress(block.payload, block.uncompressed_len);
    case CodecKind::kDeflateLike: return deflate_decompress(block.payload, block.uncompressed_len);
  }
  fail(ErrorCode::kCorruptBlock, "unknown codec id");
}

std::vector<uint8_t> serialize_block(const CompressedBlock& block) {
  std::vector<uint8_t> out;
  detail::ByteWriter w(out);
  w.put_u8(static_cast<uint8_t>(static_cast<uint8_t>(block.codec) | (block.raw_fallback ? 0x80 : 0)));
  w.put<uint32_t>(block.uncompressed_len);
  w.put<uint32_t>(block.compressed_len);
  w.put_bytes(block.payload);
  return out;
}

CompressedBlock deserialize_block(std::span<const uint8_t> bytes) {
  detail::ByteReader r(bytes, ErrorCode::kCorruptBlock);
  CompressedBlock block;
  const uint8_t flags = r.get_u8();
  if ((flags & 0x7f) > 2) r.corrupt("unknown codec id");
  block.codec = static_cast<CodecKind>(flags & 0x7f);
  block.raw_fallback = (flags & 0x80) != 0;
  block.uncompressed_len = r.get<uint32_t>();
  block.compressed_len = r.get<uint32_t>();
  auto payload = r.get_bytes(block.compressed_len);
  block.payload.assign(payload.begin(), payload.end());
  if (!r.done()) r.corrupt("trailing bytes after block");
  return block;
}

}  // namespace colf
