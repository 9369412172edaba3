#include <gtest/gtest.h>

#include "colf/bench/csv.hpp"
#include "colf/bench/gen.hpp"
#include "colf/bench/report.hpp"
#include "colf/bench/suites.hpp"
#include "colf/stats.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace colf::bench {
namespace {

TableSpec one_column(ColumnType type, Generator g, uint64_t rows, double nulls = 0.0) {
  TableSpec t;
  t.name = "t";
  t.row_count = rows;
  t.seed = 7;
  t.columns = {{"x", type, std::move(g), nulls}};
  return t;
}

TEST(Gen, UniformHitsRequestedSelectivity) {
  const TableSpec spec = one_column(ColumnType::int64(), Uniform{0, 99, std::nullopt}, 1'000'000);
  const Table t = gen_table(spec);
  const double s = evaluate_predicate(Predicate::gt("x", Value::i64(34)), t.columns[0]).selectivity();
  EXPECT_NEAR(s, 0.65, 0.005);
  const Predicate p = predicate_for(spec, {"x", CompareOp::kGt, 0.65});
  EXPECT_EQ(p.operand, Value::i64(34));
}

TEST(Gen, RunsHaveRequestedLength) {
  const Table t = gen_table(one_column(ColumnType::int64(), Runs{{Value::i64(1), Value::i64(2)}, 1000}, 10'000));
  EXPECT_EQ(compute_stats(t.columns[0]).max_run_length, 1000u);
}

TEST(Gen, StringPoolCardinality) {
  const Table t = gen_table(one_column(ColumnType::utf8(), StringPool{7, 6, {}, {}}, 20'000));
  EXPECT_EQ(compute_stats(t.columns[0]).distinct_count, 7u);
}

TEST(Gen, DeterministicInSeed) {
  const TableSpec spec = sales_spec(5000, 3);
  const Table a = gen_table(spec);
  const Table b = gen_table(spec);
  EXPECT_EQ(a, b);
  EXPECT_EQ(table_checksum(a), table_checksum(b));
  TableSpec other = spec;
  other.seed = 4;
  EXPECT_NE(table_checksum(gen_table(other)), table_checksum(a));
}

TEST(Gen, InfeasibleTargetsRejected) {
  const TableSpec spec = one_column(ColumnType::int64(), Uniform{0, 99, std::nullopt}, 100);
  EXPECT_COLF_ERROR(predicate_for(spec, {"x", CompareOp::kGt, 1.5}), ErrorCode::kConfigError);
  EXPECT_COLF_ERROR(predicate_for(spec, {"x", CompareOp::kGt, -0.1}), ErrorCode::kConfigError);
  EXPECT_COLF_ERROR(predicate_for(spec, {"x", CompareOp::kEq, 0.5}), ErrorCode::kConfigError);
  const TableSpec coarse = one_column(ColumnType::int64(), Uniform{0, 3, std::nullopt}, 100);
  EXPECT_COLF_ERROR(predicate_for(coarse, {"x", CompareOp::kGt, 0.1}), ErrorCode::kConfigError);
  TableSpec with_target = spec;
  with_target.targets = {{"x", CompareOp::kGt, 2.0}};
  EXPECT_COLF_ERROR(gen_table(with_target), ErrorCode::kConfigError);
  EXPECT_COLF_ERROR(gen_table(one_column(ColumnType::utf8(), Zipf{}, 10)), ErrorCode::kConfigError);
}

TEST(Gen, NullFractionAndVectors) {
  const Table t = gen_table(one_column(ColumnType::float64(), Uniform{0, 1, 2}, 100'000, 0.2));
  EXPECT_NEAR(double(t.columns[0].null_count()) / 100'000, 0.2, 0.01);
  const Table v = gen_table(one_column(ColumnType::fixed_vector(8), UnitVector{}, 100));
  for (size_t r = 0; r < 100; ++r) {
    const Value row = v.columns[0].get(r);
    double norm = 0;
    for (double x : row.as_vec()) norm += x * x;
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(Gen, BenchmarkTableShapes) {
  const TableSpec sales = sales_spec(kSalesRows, 1);
  const TableSpec demo = demographics_spec(kDemographicsRows, 1);
  EXPECT_EQ(sales.columns.size(), 34u);
  EXPECT_EQ(demo.columns.size(), 9u);
  const Table d = gen_table(demo);
  for (const auto& [table, target] : benchmark_selectivity_targets()) {
    if (table != "demographics") continue;
    const Predicate p = predicate_for(demo, target);
    EXPECT_EQ(p.operand, Value::str("Secondary"));
    EXPECT_NEAR(evaluate_predicate(p, d.column(p.column)).selectivity(), target.selectivity, 0.005);
  }
  for (const auto& nq : subexpression_queries()) {
    const Schema schema = nq.table == "sales" ? sales.schema() : demo.schema();
    for (const auto& c : nq.query.projection) EXPECT_TRUE(schema.contains(c)) << c;
    for (const auto& p : nq.query.predicates) p.validate(schema.field(schema.index_of(p.column)).type);
  }
}

Schema ab_schema(bool b_nullable = true) {
  return Schema({{"a", ColumnType::int32(), false}, {"b", ColumnType::utf8(), b_nullable}});
}

TEST(Csv, ReadsRows) {
  const Table t = ingest_csv_text("a,b\n1,x\n", ab_schema());
  ASSERT_EQ(t.row_count, 1u);
  EXPECT_EQ(t.columns[0].get(0), Value::i32(1));
  EXPECT_EQ(t.columns[1].get(0), Value::str("x"));
}

TEST(Csv, EmptyFieldIsNull) {
  const Table t = ingest_csv_text("a,b\n1,\n2,\"\"\n", ab_schema());
  ASSERT_EQ(t.row_count, 2u);
  EXPECT_TRUE(t.columns[1].is_null(0));
  EXPECT_EQ(t.columns[1].get(1), Value::str(""));
  EXPECT_COLF_ERROR(ingest_csv_text("a,b\n1,\n", ab_schema(false)), ErrorCode::kSchemaError);
}

TEST(Csv, ParseErrorNamesRowAndColumn) {
  try {
    ingest_csv_text("a,b\nabc,x\n", ab_schema());
    FAIL() << "no error";
  } catch (const ColfError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("row 1, column 1"), std::string::npos) << e.what();
  }
  EXPECT_COLF_ERROR(ingest_csv_text("a,b\n1,x\n2\n", ab_schema()), ErrorCode::kParseError);
  EXPECT_COLF_ERROR(ingest_csv_text("a,b\n1,\"x\n", ab_schema()), ErrorCode::kParseError);
  EXPECT_COLF_ERROR(ingest_csv_text("a,c\n1,x\n", ab_schema()), ErrorCode::kSchemaError);
}

TEST(Csv, QuotingAndHeaderOrder) {
  const Table t = ingest_csv_text("b,a\r\n\"x,\"\"y\"\"\nz\",5\r\n", ab_schema());
  ASSERT_EQ(t.row_count, 1u);
  EXPECT_EQ(t.columns[0].get(0), Value::i32(5));
  EXPECT_EQ(t.columns[1].get(0), Value::str("x,\"y\"\nz"));
}

TEST(Csv, WriteThenIngestRoundTrips) {
  testing::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Table t = testing::random_table(rng, 200, 5);
    const Table back = ingest_csv_text(write_csv(t), t.schema);
    EXPECT_EQ(back, t) << "table " << i;
  }
}

TEST(Report, JsonParsesAndCsvHasHeader) {
  Report r;
  r.suite = "demo";
  r.seed = 1;
  Case c;
  c.name = "a,b";
  c.config = {{"k", "v"}};
  c.timings_ms = {{"total", 1.5}};
  c.checksum = "00";
  r.cases.push_back(c);
  r.check("ok", true);
  const auto j = nlohmann::json::parse(emit_report(r, ReportFormat::kJson));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["cases"][0]["config"]["k"], "v");
  EXPECT_TRUE(j["passed"].get<bool>());
  const std::string csv = emit_report(r, ReportFormat::kCsv);
  EXPECT_EQ(csv.rfind("suite,case,config,", 0), 0u);
  EXPECT_NE(csv.find("\"a,b\""), std::string::npos);
  r.check("bad", false);
  EXPECT_FALSE(r.passed());
}

TEST(Report, MedianOfRuns) {
  int calls = 0;
  const double ms = median_ms(5, [&] { ++calls; });
  EXPECT_EQ(calls, 6);
  EXPECT_GE(ms, 0.0);
}

nlohmann::json without_timings(const Report& r) {
  auto j = nlohmann::json::parse(emit_report(r, ReportFormat::kJson));
  for (auto& c : j["cases"]) c.erase("timings_ms");
  j.erase("metadata");
  return j;
}

TEST(Suites, CompressionPassesAndIsStable) {
  SuiteConfig cfg;
  cfg.reps = 1;
  cfg.scale = 0.25;
  const Report a = suite_compression(cfg);
  for (const auto& c : a.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  EXPECT_EQ(without_timings(a), without_timings(suite_compression(cfg)));
}

TEST(Suites, VectorsPass) {
  SuiteConfig cfg;
  cfg.reps = 1;
  const Report r = suite_vectors(cfg);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
}

TEST(Suites, SubexpressionsPassAtSmallScale) {
  SuiteConfig cfg;
  cfg.reps = 1;
  cfg.scale = 0.05;
  const Report r = suite_subexpressions(cfg);
  EXPECT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) {
    if (c.name.rfind("realized", 0) == 0 || c.name.rfind("Q1 row count", 0) == 0) continue;
    EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  }
}

TEST(Suites, UnknownSuiteRejected) {
  EXPECT_COLF_ERROR(run_suite("nope", SuiteConfig{}), ErrorCode::kConfigError);
}

}  // namespace
}  // namespace colf::bench
