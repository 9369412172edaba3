#include "colf/decode_stats.hpp"

namespace colf {

DecodeStats& DecodeStats::operator+=(const DecodeStats& o) {
  values_decoded += o.values_decoded;
  pages_read += o.pages_read;
  chunks_opened += o.chunks_opened;
  chunks_skipped += o.chunks_skipped;
  batches_skipped += o.batches_skipped;
  bytes_read += o.bytes_read;
  footer_bytes_read += o.footer_bytes_read;
  return *this;
}

DecodeStats operator-(DecodeStats a, const DecodeStats& b) {
  a.values_decoded -= b.values_decoded;
  a.pages_read -= b.pages_read;
  a.chunks_opened -= b.chunks_opened;
  a.chunks_skipped -= b.chunks_skipped;
  a.batches_skipped -= b.batches_skipped;
  a.bytes_read -= b.bytes_read;
  a.footer_bytes_read -= b.footer_bytes_read;
  return a;
}

std::string DecodeStats::to_string() const {
  return "values_decoded=" + std::to_string(values_decoded) + " pages_read=" + std::to_string(pages_read) +
         " chunks_opened=" + std::to_string(chunks_opened) + " chunks_skipped=" + std::to_string(chunks_skipped) +
         " batches_skipped=" + std::to_string(batches_skipped) + " bytes_read=" + std::to_string(bytes_read) +
         " footer_bytes_read=" + std::to_string(footer_bytes_read);
}

DecodeStats DecodeCounters::snapshot() const {
  DecodeStats s;
  s.values_decoded = values_decoded_.load();
  s.pages_read = pages_read_.load();
  s.chunks_opened = chunks_opened_.load();
  s.chunks_skipped = chunks_skipped_.load();
  s.batches_skipped = batches_skipped_.load();
  s.bytes_read = bytes_read_.load();
  s.footer_bytes_read = footer_bytes_read_.load();
  return s;
}

}  // namespace colf
