#include "colf/bench/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace colf::bench {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Stream {
 public:
  explicit Stream(uint64_t seed) : rng_(seed) {}
  double u01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  uint64_t below(uint64_t n) { return static_cast<uint64_t>(u01() * static_cast<double>(n)) % n; }
  double normal() {
    const double u1 = 1.0 - u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 rng_;
};

/// Index drawn by inverting a cumulative weight table.
class Sampler {
 public:
  explicit Sampler(const std::vector<double>& weights) {
    double total = 0;
    for (double w : weights) {
      if (!(w >= 0)) fail(ErrorCode::kConfigError, "generator weights must be non-negative");
      total += w;
      cdf_.push_back(total);
    }
    if (!(total > 0)) fail(ErrorCode::kConfigError, "generator weights sum to zero");
    for (double& c : cdf_) c /= total;
  }
  size_t draw(Stream& s) const {
    const double u = s.u01();
    const size_t i = static_cast<size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    return std::min(i, cdf_.size() - 1);
  }
  double probability(size_t i) const { return cdf_[i] - (i ? cdf_[i - 1] : 0.0); }

 private:
  std::vector<double> cdf_;
};

std::vector<double> zipf_weights(const Zipf& z) {
  std::vector<double> w(z.cardinality);
  for (uint64_t r = 0; r < z.cardinality; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), z.skew);
  return w;
}

std::vector<double> label_weights(const StringPool& p) {
  if (!p.weights.empty()) return p.weights;
  return std::vector<double>(p.labels.empty() ? p.cardinality : p.labels.size(), 1.0);
}

std::vector<std::string> pool_strings(const StringPool& p, Stream& s) {
  if (!p.labels.empty()) return p.labels;
  std::vector<std::string> out;
  std::set<std::string> seen;
  while (out.size() < p.cardinality) {
    std::string v(p.len, 'a');
    for (auto& c : v) c = static_cast<char>('a' + s.below(26));
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

double round_to(double v, int decimals) {
  const double p = std::pow(10.0, decimals);
  return std::nearbyint(v * p) / p;
}

void check_column(const ColumnSpec& c, uint64_t rows) {
  auto bad = [&](const std::string& why) { fail(ErrorCode::kConfigError, "column '" + c.name + "': " + why); };
  if (!(c.null_fraction >= 0 && c.null_fraction <= 1)) bad("null fraction outside [0, 1]");
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Uniform>) {
          if (!c.type.is_integer() && c.type.id != TypeId::kFloat64) bad("uniform needs an integer or float column");
          if (!(g.min <= g.max)) bad("uniform needs min <= max");
        } else if constexpr (std::is_same_v<G, Zipf>) {
          if (!c.type.is_integer()) bad("zipf needs an integer column");
          if (g.cardinality == 0 || g.cardinality > 100'000'000) bad("zipf cardinality out of range");
        } else if constexpr (std::is_same_v<G, Runs>) {
          if (g.values.empty() || g.run_len == 0) bad("runs need values and a positive run length");
          for (const auto& v : g.values) {
            if (v.is_null() || !v.conforms_to(c.type)) bad("run value does not fit the column type");
          }
        } else if constexpr (std::is_same_v<G, Sequential>) {
          if (!c.type.is_integer()) bad("sequential needs an integer column");
          if (g.every == 0) bad("sequential needs every > 0");
        } else if constexpr (std::is_same_v<G, StringPool>) {
          if (c.type.id != TypeId::kUtf8) bad("string pool needs a utf8 column");
          if (g.labels.empty() && (g.cardinality == 0 || g.len == 0)) bad("string pool needs labels or cardinality and len");
          if (g.labels.empty() && g.len < 8 && g.cardinality > std::pow(26.0, g.len)) bad("string pool too small for cardinality");
          if (!g.weights.empty() && g.weights.size() != g.labels.size()) bad("one weight per label");
        } else {
          if (c.type.id != TypeId::kFixedVector) bad("unit vectors need a vector column");
        }
      },
      c.generator);
  (void)rows;
}

ColumnVector generate(const ColumnSpec& c, uint64_t rows, uint64_t seed) {
  Stream values(splitmix64(seed ^ fnv1a(c.name)));
  Stream nulls(splitmix64(seed ^ fnv1a(c.name) ^ 0x5bd1e995ULL));
  ColumnVector out(c.type);
  out.reserve(rows);
  auto push_int = [&](int64_t v) {
    if (c.type.id == TypeId::kInt32) {
      out.push_i32(static_cast<int32_t>(v));
    } else {
      out.push_i64(v);
    }
  };
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Uniform>) {
          if (c.type.is_integer()) {
            const int64_t lo = static_cast<int64_t>(g.min);
            const uint64_t span = static_cast<uint64_t>(static_cast<int64_t>(g.max) - lo) + 1;
            for (uint64_t i = 0; i < rows; ++i) push_int(lo + static_cast<int64_t>(values.below(span)));
          } else {
            for (uint64_t i = 0; i < rows; ++i) {
              double v = g.min + values.u01() * (g.max - g.min);
              if (g.decimals) v = round_to(v, *g.decimals);
              out.push_f64(v);
            }
          }
        } else if constexpr (std::is_same_v<G, Zipf>) {
          Sampler sampler(zipf_weights(g));
          for (uint64_t i = 0; i < rows; ++i) push_int(g.base + g.step * static_cast<int64_t>(sampler.draw(values)));
        } else if constexpr (std::is_same_v<G, Runs>) {
          for (uint64_t i = 0; i < rows; ++i) out.append(g.values[(i / g.run_len) % g.values.size()]);
        } else if constexpr (std::is_same_v<G, Sequential>) {
          for (uint64_t i = 0; i < rows; ++i) push_int(g.start + static_cast<int64_t>(i / g.every));
        } else if constexpr (std::is_same_v<G, StringPool>) {
          const auto pool = pool_strings(g, values);
          Sampler sampler(label_weights(g));
          for (uint64_t i = 0; i < rows; ++i) out.push_str(pool[sampler.draw(values)]);
        } else {
          std::vector<double> v(c.type.dim);
          for (uint64_t i = 0; i < rows; ++i) {
            double norm = 0;
            for (auto& x : v) {
              x = values.normal();
              norm += x * x;
            }
            norm = std::sqrt(norm);
            for (auto& x : v) x /= norm;
            out.push_vec(v);
          }
        }
      },
      c.generator);
  if (c.null_fraction > 0) {
    for (uint64_t i = 0; i < rows; ++i) {
      if (nulls.u01() < c.null_fraction) out.mark_null(i);
    }
  }
  return out;
}

Value numeric_value(const ColumnType& t, double v) {
  switch (t.id) {
    case TypeId::kInt32: return Value::i32(static_cast<int32_t>(v));
    case TypeId::kInt64: return Value::i64(static_cast<int64_t>(v));
    default: return Value::f64(v);
  }
}

double numeric(const Value& v) {
  if (std::holds_alternative<double>(v.storage())) return v.as_f64();
  return static_cast<double>(v.as_integer());
}

}  // namespace

Schema TableSpec::schema() const {
  std::vector<Field> fields;
  for (const auto& c : columns) fields.push_back(Field{c.name, c.type, c.null_fraction > 0});
  return Schema(std::move(fields));
}

const ColumnSpec& TableSpec::column(const std::string& n) const {
  for (const auto& c : columns) {
    if (c.name == n) return c;
  }
  fail(ErrorCode::kNameError, "no column '" + n + "' in table spec " + name);
}

double expected_selectivity(const ColumnSpec& c, const Predicate& p) {
  if (const auto* u = std::get_if<Uniform>(&c.generator)) {
    const double x = numeric(p.operand);
    if (c.type.is_integer()) {
      const double lo = std::floor(u->min), hi = std::floor(u->max), n = hi - lo + 1;
      auto at_most = [&](double t) { return std::clamp(std::floor(t) - lo + 1, 0.0, n) / n; };
      switch (p.op) {
        case CompareOp::kGt: return 1.0 - at_most(x);
        case CompareOp::kGe: return 1.0 - at_most(x - 1);
        case CompareOp::kLt: return at_most(x - 1);
        case CompareOp::kLe: return at_most(x);
        case CompareOp::kEq: return (x >= lo && x <= hi) ? 1.0 / n : 0.0;
        case CompareOp::kBetween: return std::max(0.0, at_most(numeric(p.operand_hi)) - at_most(x - 1));
      }
    }
    const double width = u->max - u->min;
    auto below = [&](double t) { return width > 0 ? std::clamp((t - u->min) / width, 0.0, 1.0) : (t > u->min ? 1.0 : 0.0); };
    switch (p.op) {
      case CompareOp::kGt:
      case CompareOp::kGe: return 1.0 - below(x);
      case CompareOp::kLt:
      case CompareOp::kLe: return below(x);
      case CompareOp::kEq: return 0.0;
      case CompareOp::kBetween: return below(numeric(p.operand_hi)) - below(x);
    }
  }
  if (const auto* s = std::get_if<StringPool>(&c.generator); s && !s->labels.empty() && p.op == CompareOp::kEq) {
    Sampler sampler(label_weights(*s));
    for (size_t i = 0; i < s->labels.size(); ++i) {
      if (s->labels[i] == p.operand.as_str()) return sampler.probability(i);
    }
    return 0.0;
  }
  fail(ErrorCode::kConfigError, "no analytic selectivity for " + p.to_string() + " on column '" + c.name + "'");
}

Predicate predicate_for(const TableSpec& spec, const SelectivityTarget& target) {
  const double s = target.selectivity;
  if (!(s >= 0.0 && s <= 1.0)) {
    fail(ErrorCode::kConfigError, "selectivity " + std::to_string(s) + " is outside [0, 1]");
  }
  const ColumnSpec& c = spec.column(target.column);
  const double usable = 1.0 - c.null_fraction;
  if (s > usable + 1e-12) fail(ErrorCode::kConfigError, "selectivity exceeds the non-null fraction of " + c.name);
  const double want = s / usable;
  Predicate p;
  p.column = c.name;
  p.op = target.op;
  if (const auto* u = std::get_if<Uniform>(&c.generator)) {
    double t = 0;
    if (c.type.is_integer()) {
      const double lo = std::floor(u->min), hi = std::floor(u->max), n = hi - lo + 1;
      const double k = std::nearbyint(want * n);
      switch (target.op) {
        case CompareOp::kGt: t = hi - k; break;
        case CompareOp::kGe: t = hi - k + 1; break;
        case CompareOp::kLt: t = lo + k; break;
        case CompareOp::kLe: t = lo + k - 1; break;
        default: fail(ErrorCode::kConfigError, "selectivity targets support Gt, Ge, Lt and Le on uniform columns");
      }
    } else {
      const double width = u->max - u->min;
      switch (target.op) {
        case CompareOp::kGt:
        case CompareOp::kGe: t = u->max - want * width; break;
        case CompareOp::kLt:
        case CompareOp::kLe: t = u->min + want * width; break;
        default: fail(ErrorCode::kConfigError, "selectivity targets support Gt, Ge, Lt and Le on uniform columns");
      }
      if (u->decimals) t = round_to(t, *u->decimals);
    }
    p.operand = numeric_value(c.type, t);
  } else if (const auto* pool = std::get_if<StringPool>(&c.generator); pool && target.op == CompareOp::kEq) {
    if (pool->labels.empty()) fail(ErrorCode::kConfigError, "Eq targets need a labelled string pool");
    Sampler sampler(label_weights(*pool));
    size_t best = 0;
    for (size_t i = 1; i < pool->labels.size(); ++i) {
      if (std::fabs(sampler.probability(i) - want) < std::fabs(sampler.probability(best) - want)) best = i;
    }
    p.operand = Value::str(pool->labels[best]);
  } else {
    fail(ErrorCode::kConfigError, "generator of column '" + c.name + "' cannot express a selectivity target");
  }
  const double got = expected_selectivity(c, p) * usable;
  if (std::fabs(got - s) > 0.005) {
    fail(ErrorCode::kConfigError, "column '" + c.name + "' cannot reach selectivity " + std::to_string(s) +
                                      " (closest is " + std::to_string(got) + ")");
  }
  return p;
}

Table gen_table(const TableSpec& spec) {
  if (spec.columns.empty()) fail(ErrorCode::kConfigError, "table spec has no columns");
  for (const auto& c : spec.columns) check_column(c, spec.row_count);
  Schema schema = spec.schema();
  for (const auto& t : spec.targets) predicate_for(spec, t);

  Table table;
  table.schema = std::move(schema);
  table.row_count = spec.row_count;
  table.columns.resize(spec.columns.size());
  const long long n = static_cast<long long>(spec.columns.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    table.columns[i] = generate(spec.columns[i], spec.row_count, spec.seed);
  }
  return table;
}

// ---------------------------------------------------------------------------

namespace {

constexpr int64_t kFirstDate = 2451545;

ColumnSpec money(const std::string& name, double lo, double hi, double nulls = 0.0) {
  return ColumnSpec{name, ColumnType::float64(), Uniform{lo, hi, 2}, nulls};
}

ColumnSpec key(const std::string& name, double lo, double hi, double nulls = 0.0) {
  return ColumnSpec{name, ColumnType::int64(), Uniform{lo, hi, std::nullopt}, nulls};
}

}  // namespace

TableSpec sales_spec(uint64_t rows, uint64_t seed) {
  TableSpec t;
  t.name = "sales";
  t.row_count = rows;
  t.seed = seed;
  const uint64_t rows_per_day = std::max<uint64_t>(1, rows / 1800);
  t.columns = {
      ColumnSpec{"cs_sold_date_sk", ColumnType::int64(), Sequential{kFirstDate, rows_per_day}},
      ColumnSpec{"cs_sold_time_sk", ColumnType::int64(), Zipf{2700, 1.0, 12000, 32}},
      key("cs_ship_date_sk", kFirstDate, kFirstDate + 2099),
      key("cs_bill_customer_sk", 1, 2'000'000, 0.005),
      key("cs_bill_cdemo_sk", 1, 1'920'800, 0.005),
      key("cs_bill_hdemo_sk", 1, 7200, 0.005),
      key("cs_bill_addr_sk", 1, 1'000'000, 0.005),
      key("cs_ship_customer_sk", 1, 2'000'000, 0.005),
      key("cs_ship_cdemo_sk", 1, 1'920'800, 0.005),
      key("cs_ship_hdemo_sk", 1, 7200, 0.005),
      key("cs_ship_addr_sk", 1, 1'000'000, 0.005),
      ColumnSpec{"cs_call_center_sk", ColumnType::int64(), Zipf{42, 0.5, 1, 1}, 0.005},
      key("cs_catalog_page_sk", 1, 17'000, 0.005),
      key("cs_ship_mode_sk", 1, 20, 0.005),
      key("cs_warehouse_sk", 1, 10, 0.005),
      ColumnSpec{"cs_item_sk", ColumnType::int64(), Zipf{102'000, 0.8, 1, 1}},
      key("cs_promo_sk", 1, 500, 0.005),
      ColumnSpec{"cs_order_number", ColumnType::int64(), Sequential{1, 10}},
      ColumnSpec{"cs_quantity", ColumnType::int32(), Uniform{1, 100, std::nullopt}, 0.005},
      money("cs_wholesale_cost", 1, 100),
      money("cs_list_price", 1, 300, 0.005),
      money("cs_sales_price", 0, 300, 0.005),
      money("cs_ext_discount_amt", 0, 30'000, 0.005),
      money("cs_ext_sales_price", 0, 30'000),
      money("cs_ext_wholesale_cost", 1, 10'000, 0.005),
      money("cs_ext_list_price", 1, 30'000, 0.005),
      money("cs_ext_tax", 0, 2'700),
      money("cs_coupon_amt", 0, 30'000, 0.005),
      money("cs_ext_ship_cost", 0, 15'000, 0.005),
      money("cs_net_paid", 0, 30'000, 0.005),
      money("cs_net_paid_inc_tax", 0, 32'000),
      money("cs_net_paid_inc_ship", 0, 45'000, 0.005),
      money("cs_net_paid_inc_ship_tax", 0, 47'000),
      money("cs_net_profit", -10'000, 20'000),
  };
  t.targets = {{"cs_ship_date_sk", CompareOp::kGt, 0.65}, {"cs_wholesale_cost", CompareOp::kGt, 0.30}};
  return t;
}

TableSpec demographics_spec(uint64_t rows, uint64_t seed) {
  TableSpec t;
  t.name = "demographics";
  t.row_count = rows;
  t.seed = seed;
  const std::vector<std::string> education = {"Primary",     "Secondary",       "College", "2 yr Degree",
                                              "4 yr Degree", "Advanced Degree", "Unknown"};
  std::vector<double> education_weights(education.size(), 0.86 / 6);
  education_weights[1] = 0.14;
  t.columns = {
      ColumnSpec{"cd_demo_sk", ColumnType::int64(), Sequential{1, 1}},
      ColumnSpec{"cd_gender", ColumnType::utf8(), StringPool{0, 0, {"M", "F"}, {}}},
      ColumnSpec{"cd_marital_status", ColumnType::utf8(), StringPool{0, 0, {"M", "S", "D", "W", "U"}, {}}},
      ColumnSpec{"cd_education_status", ColumnType::utf8(), StringPool{0, 0, education, education_weights}},
      ColumnSpec{"cd_purchase_estimate", ColumnType::int32(), Zipf{20, 0.0, 500, 500}},
      ColumnSpec{"cd_credit_rating", ColumnType::utf8(),
                 StringPool{0, 0, {"Good", "High Risk", "Low Risk", "Unknown"}, {}}},
      ColumnSpec{"cd_dep_count", ColumnType::int32(), Uniform{0, 6, std::nullopt}},
      ColumnSpec{"cd_dep_employed_count", ColumnType::int32(), Uniform{0, 6, std::nullopt}},
      ColumnSpec{"cd_dep_college_count", ColumnType::int32(), Uniform{0, 6, std::nullopt}},
  };
  t.targets = {{"cd_education_status", CompareOp::kEq, 0.14}};
  return t;
}

std::vector<NamedQuery> subexpression_queries() {
  return {
      {{"Q1",
        {"cs_ship_date_sk", "cs_bill_customer_sk"},
        {Predicate::eq("cs_sold_time_sk", Value::i64(12032)), Predicate::eq("cs_sold_date_sk", Value::i64(2452653))}},
       "sales"},
      {{"Q2",
        {"cd_demo_sk", "cd_dep_college_count"},
        {Predicate::eq("cd_gender", Value::str("F")), Predicate::eq("cd_education_status", Value::str("Secondary"))}},
       "demographics"},
      {{"Q3",
        {"cd_demo_sk"},
        {Predicate::eq("cd_gender", Value::str("M")), Predicate::eq("cd_marital_status", Value::str("D")),
         Predicate::eq("cd_education_status", Value::str("College"))}},
       "demographics"},
      {{"Q4",
        {"cs_ext_sales_price", "cs_sold_date_sk", "cs_item_sk"},
        {Predicate::gt("cs_wholesale_cost", Value::f64(80.0)), Predicate::lt("cs_ext_tax", Value::f64(500.0))}},
       "sales"},
      {{"Q5",
        {"cs_ext_sales_price", "cs_sold_date_sk", "cs_item_sk", "cs_net_paid_inc_tax", "cs_net_paid_inc_ship_tax",
         "cs_net_profit"},
        {Predicate::gt("cs_wholesale_cost", Value::f64(80.0))}},
       "sales"},
  };
}

std::vector<std::pair<std::string, SelectivityTarget>> benchmark_selectivity_targets() {
  return {{"sales", {"cs_ship_date_sk", CompareOp::kGt, 0.65}},
          {"sales", {"cs_wholesale_cost", CompareOp::kGt, 0.30}},
          {"demographics", {"cd_education_status", CompareOp::kEq, 0.14}}};
}

}  // namespace colf::bench
