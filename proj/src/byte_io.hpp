#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "colf/error.hpp"

namespace colf::detail {

static_assert(std::endian::native == std::endian::little, "COLF byte layouts assume a little-endian host");

class ByteWriter {
 public:
  explicit ByteWriter(std::vector<uint8_t>& out) : out_(out) {}

  template <typename T>
  void put(T v) {
    const size_t at = out_.size();
    out_.resize(at + sizeof(T));
    std::memcpy(out_.data() + at, &v, sizeof(T));
  }
  void put_u8(uint8_t v) { out_.push_back(v); }
  void put_bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void put_string(const std::string& s) {
    put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  size_t size() const { return out_.size(); }

 private:
  std::vector<uint8_t>& out_;
};

/// Bounds-checked little-endian reader; any overrun throws `error`.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> bytes, ErrorCode error) : bytes_(bytes), error_(error) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  uint8_t get_u8() { return get<uint8_t>(); }
  std::span<const uint8_t> get_bytes(size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::string get_string() {
    auto n = get<uint32_t>();
    auto b = get_bytes(n);
    return std::string(reinterpret_cast<const char*>(b.data()), b.size());
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }
  bool done() const { return pos_ == bytes_.size(); }
  [[noreturn]] void corrupt(const std::string& what) const { fail(error_, what); }

 private:
  void need(size_t n) const {
    if (n > bytes_.size() - pos_) fail(error_, "unexpected end of data");
  }

  std::span<const uint8_t> bytes_;
  ErrorCode error_;
  size_t pos_ = 0;
};

template <typename T>
T load_le(const uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace colf::detail
