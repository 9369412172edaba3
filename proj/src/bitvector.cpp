#include "colf/bitvector.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace colf {

BitVector::BitVector(size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~uint64_t{0} : 0) {
  trim();
}

void BitVector::trim() {
  if (size_ & 63) {
    words_.back() &= (uint64_t{1} << (size_ & 63)) - 1;
  }
}

void BitVector::push_back(bool v) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  if (v) set(size_ - 1);
}

size_t BitVector::popcount() const {
  size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

namespace {

uint64_t range_mask(size_t lo, size_t hi) {
  // Bits [lo, hi) of one word, 0 <= lo < hi <= 64.
  uint64_t upper = hi == 64 ? ~uint64_t{0} : (uint64_t{1} << hi) - 1;
  return upper & ~((uint64_t{1} << lo) - 1);
}

template <typename Fn>
void for_each_word_range(size_t begin, size_t end, Fn&& fn) {
  while (begin < end) {
    size_t word = begin >> 6;
    size_t lo = begin & 63;
    size_t hi = std::min<size_t>(64, lo + (end - begin));
    fn(word, range_mask(lo, hi));
    begin += hi - lo;
  }
}

}  // namespace

size_t BitVector::count_range(size_t begin, size_t end) const {
  assert(begin <= end && end <= size_);
  size_t n = 0;
  for_each_word_range(begin, end, [&](size_t w, uint64_t m) { n += std::popcount(words_[w] & m); });
  return n;
}

bool BitVector::any_in_range(size_t begin, size_t end) const {
  assert(begin <= end && end <= size_);
  bool any = false;
  for_each_word_range(begin, end, [&](size_t w, uint64_t m) { any |= (words_[w] & m) != 0; });
  return any;
}

void BitVector::clear_range(size_t begin, size_t end) {
  for_each_word_range(begin, end, [&](size_t w, uint64_t m) { words_[w] &= ~m; });
}

void BitVector::set_range(size_t begin, size_t end) {
  for_each_word_range(begin, end, [&](size_t w, uint64_t m) { words_[w] |= m; });
}

void BitVector::splice(size_t offset, const BitVector& fragment) {
  assert(offset + fragment.size() <= size_);
  if ((offset & 63) == 0) {
    size_t base = offset >> 6;
    size_t full = fragment.size() >> 6;
    std::copy_n(fragment.words_.begin(), full, words_.begin() + base);
    for (size_t i = full * 64; i < fragment.size(); ++i) assign(offset + i, fragment.get(i));
    return;
  }
  for (size_t i = 0; i < fragment.size(); ++i) assign(offset + i, fragment.get(i));
}

BitVector BitVector::slice(size_t begin, size_t end) const {
  BitVector out(end - begin);
  for (size_t i = begin; i < end; ++i) {
    if (get(i)) out.set(i - begin);
  }
  return out;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  assert(other.size_ == size_);
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::vector<uint32_t> BitVector::set_positions() const {
  std::vector<uint32_t> out;
  out.reserve(popcount());
  for (size_t w = 0; w < words_.size(); ++w) {
    uint64_t word = words_[w];
    while (word) {
      out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<uint8_t> BitVector::to_bytes() const {
  std::vector<uint8_t> out((size_ + 7) / 8);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>(words_[i >> 3] >> ((i & 7) * 8));
  }
  return out;
}

BitVector BitVector::from_bytes(std::span<const uint8_t> bytes, size_t size) {
  BitVector out(size);
  size_t n = std::min(bytes.size(), (size + 7) / 8);
  for (size_t i = 0; i < n; ++i) {
    out.words_[i >> 3] |= uint64_t{bytes[i]} << ((i & 7) * 8);
  }
  out.trim();
  return out;
}

}  // namespace colf
