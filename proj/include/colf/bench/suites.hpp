#pragma once

#include <memory>
#include <string>
#include <vector>

#include "colf/bench/report.hpp"
#include "colf/codec.hpp"
#include "colf/container.hpp"

namespace colf::bench {

struct SuiteConfig {
  uint64_t seed = 42;
  /// Multiplies the default row counts (floored at a few thousand rows).
  double scale = 1.0;
  int reps = 5;
  CodecKind real_codec = CodecKind::kLz4Like;
};

/// Per column type and codec: encoded, compressed and CSV sizes under each policy and forced encoding.
Report suite_compression(const SuiteConfig& config);
/// Unit vectors as one nested column or as one column per dimension; ScaledInt error and 1-NN agreement.
Report suite_vectors(const SuiteConfig& config);
/// Bit-vector application over 16 row batches at a sweep of selectivities for every mask mode.
Report suite_selectivity(const SuiteConfig& config);
/// Q1-Q5 for every strategy under Store and the real codec, checked against the reference executor.
Report suite_subexpressions(const SuiteConfig& config);

/// compression, selectivity, subexpr, vectors.
const std::vector<std::string>& suite_names();
/// Throws kConfigError for an unknown suite.
Report run_suite(const std::string& name, const SuiteConfig& config);

/// In-memory COLF image of `table`.
std::shared_ptr<const MemorySource> write_to_memory(const Table& table, const WriteOptions& options);

/// Stored page bytes of one column of a file, with the payload bytes before block compression.
Sizes column_sizes(const ByteSource& source, const FileFooter& footer, size_t column);

}  // namespace colf::bench
