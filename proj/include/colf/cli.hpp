#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "colf/predicate.hpp"

namespace colf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Malformed command-line input: bad flags, bad --where text, unreadable schema file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated AND of `col OP literal`, OP one of = < > <= >=. String literals are single-quoted
/// ('' escapes a quote); other literals are read with the column's type. Throws UsageError.
PredicateList parse_where(const std::string& text, const Schema& schema);

/// JSON object {"columns": [{"name": ..., "type": ..., "nullable": bool}, ...]}; nullable defaults to true.
/// Throws UsageError.
Schema parse_schema_json(const std::string& text);

/// key=value lines; '#' starts a comment. Throws UsageError.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Runs the colf command line. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace colf::cli
