#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "colf/column.hpp"
#include "colf/exec.hpp"

namespace colf::bench {

/// Integers uniform on [min, max]; floats uniform on [min, max), rounded to `decimals` when set.
struct Uniform {
  double min = 0;
  double max = 1;
  std::optional<int> decimals;
};

/// Rank r in [0, cardinality) drawn with weight 1 / (r + 1)^skew; the value is base + step * r.
struct Zipf {
  uint64_t cardinality = 1;
  double skew = 1.0;
  int64_t base = 0;
  int64_t step = 1;
};

/// Row i holds values[(i / run_len) % values.size()].
struct Runs {
  std::vector<Value> values;
  uint64_t run_len = 1;
};

/// Row i holds start + i / every.
struct Sequential {
  int64_t start = 0;
  uint64_t every = 1;
};

/// Strings drawn from a pool. With labels the pool is the labels (optionally weighted);
/// otherwise `cardinality` random strings of `len` characters.
struct StringPool {
  uint64_t cardinality = 1;
  uint32_t len = 8;
  std::vector<std::string> labels;
  std::vector<double> weights;
};

/// Unit-norm Gaussian direction of the column's dimension.
struct UnitVector {};

using Generator = std::variant<Uniform, Zipf, Runs, Sequential, StringPool, UnitVector>;

struct ColumnSpec {
  std::string name;
  ColumnType type;
  Generator generator;
  double null_fraction = 0.0;
};

/// A predicate the generated data must satisfy with the given selectivity (within 0.5 points).
struct SelectivityTarget {
  std::string column;
  CompareOp op = CompareOp::kGt;
  double selectivity = 0.5;
};

struct TableSpec {
  std::string name;
  std::vector<ColumnSpec> columns;
  uint64_t row_count = 0;
  uint64_t seed = 0;
  std::vector<SelectivityTarget> targets;

  Schema schema() const;
  const ColumnSpec& column(const std::string& name) const;
};

/// Deterministic in (spec, seed); each column draws from its own stream. Throws kConfigError for
/// an ill-formed spec or an infeasible selectivity target.
Table gen_table(const TableSpec& spec);

/// Predicate whose expected selectivity on the generated column is `target.selectivity`.
/// Supported for Gt/Ge/Lt/Le on Uniform columns and Eq on weighted or uniform label pools.
/// Throws kConfigError when the target is infeasible or the generator cannot express it.
Predicate predicate_for(const TableSpec& spec, const SelectivityTarget& target);

/// Expected fraction of rows satisfying `p` under the generator, ignoring nulls.
double expected_selectivity(const ColumnSpec& column, const Predicate& p);

/// Default row counts of the two shapes.
inline constexpr uint64_t kSalesRows = 1'000'000;
inline constexpr uint64_t kDemographicsRows = 200'000;

/// 34-column table shaped like TPC-DS catalog_sales.
TableSpec sales_spec(uint64_t rows, uint64_t seed);
/// 9-column table shaped like TPC-DS customer_demographics.
TableSpec demographics_spec(uint64_t rows, uint64_t seed);

/// The five select/project subexpressions, over the two tables above.
struct NamedQuery {
  SubexpressionQuery query;
  std::string table;  // "sales" or "demographics"
};
std::vector<NamedQuery> subexpression_queries();

/// Selectivity experiments: cs_ship_date_sk > n at 65%, cs_wholesale_cost > n at 30%,
/// cd_education_status = 'Secondary' at 14%.
std::vector<std::pair<std::string, SelectivityTarget>> benchmark_selectivity_targets();

}  // namespace colf::bench
