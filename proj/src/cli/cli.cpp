#include "colf/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "colf/bench/csv.hpp"
#include "colf/bench/suites.hpp"
#include "colf/exec.hpp"
#include "json.hpp"

namespace colf::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_outside_quotes(const std::string& text, char sep) {
  std::vector<std::string> parts(1);
  bool quoted = false;
  for (char c : text) {
    if (c == '\'') quoted = !quoted;
    if (c == sep && !quoted) {
      parts.emplace_back();
    } else {
      parts.back().push_back(c);
    }
  }
  if (quoted) throw UsageError("unterminated string literal in --where");
  return parts;
}

template <typename T>
bool read_number(const std::string& s, T& v) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

Value literal_for(const std::string& text, const ColumnType& type, const std::string& column) {
  auto bad = [&]() -> void {
    throw UsageError("literal " + text + " does not fit column '" + column + "' of type " + type.to_string());
  };
  if (text.size() >= 2 && text.front() == '\'' && text.back() == '\'') {
    if (type.id != TypeId::kUtf8) bad();
    std::string s;
    for (size_t i = 1; i + 1 < text.size(); ++i) {
      s.push_back(text[i]);
      if (text[i] == '\'') ++i;
    }
    return Value::str(s);
  }
  switch (type.id) {
    case TypeId::kInt32: {
      int32_t v;
      if (!read_number(text, v)) bad();
      return Value::i32(v);
    }
    case TypeId::kInt64: {
      int64_t v;
      if (!read_number(text, v)) bad();
      return Value::i64(v);
    }
    case TypeId::kFloat64: {
      double v;
      if (!read_number(text, v)) bad();
      return Value::f64(v);
    }
    case TypeId::kBool:
      if (text == "true") return Value::boolean(true);
      if (text == "false") return Value::boolean(false);
      break;
    default: break;
  }
  bad();
  return Value();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ColfError(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto& part : split_outside_quotes(text, ',')) {
    const std::string t = trim(part);
    if (t.empty()) throw UsageError("empty column name in --select");
    out.push_back(t);
  }
  return out;
}

Json value_json(const std::optional<Value>& v) {
  if (!v) return nullptr;
  return Json(bench::render_value(*v));
}

Json zone_json(const ZoneMap& z) {
  return Json{{"rows", z.row_count},        {"nulls", z.null_count},
              {"min", value_json(z.min)},   {"max", value_json(z.max)},
              {"min_truncated", z.min_truncated}, {"max_truncated", z.max_truncated}};
}

Json footer_json(const FileFooter& f, uint64_t file_bytes) {
  Json j;
  j["file_bytes"] = file_bytes;
  j["version"] = f.version;
  j["rows"] = f.row_count;
  j["policy"] = f.policy;
  j["codec"] = codec_name(f.codec);
  Json cols = Json::array();
  for (const auto& field : f.schema.fields()) {
    cols.push_back(Json{{"name", field.name}, {"type", field.type.to_string()}, {"nullable", field.nullable}});
  }
  j["columns"] = cols;
  Json batches = Json::array();
  for (const auto& b : f.batches) {
    Json chunks = Json::array();
    for (size_t c = 0; c < b.chunks.size(); ++c) {
      const ChunkMeta& m = b.chunks[c];
      Json pages = Json::array();
      for (const auto& p : m.data_pages) {
        pages.push_back(Json{{"offset", p.ref.offset}, {"bytes", p.ref.length}, {"values", p.value_count},
                             {"zone_map", zone_json(p.zone_map)}});
      }
      chunks.push_back(Json{{"column", f.schema.field(c).name},
                            {"encoding", m.encoding.to_string()},
                            {"codec", codec_name(m.codec)},
                            {"nulls", m.null_count},
                            {"bytes", m.stored_bytes()},
                            {"dictionary_bytes", m.dict_page ? m.dict_page->length : 0},
                            {"presence_bytes", m.presence_page ? m.presence_page->length : 0},
                            {"zone_map", zone_json(m.zone_map)},
                            {"pages", pages}});
    }
    batches.push_back(Json{{"first_row", b.first_row}, {"rows", b.row_count}, {"chunks", chunks}});
  }
  j["batches"] = batches;
  return j;
}

std::string zone_text(const ZoneMap& z) {
  if (z.all_null()) return "all null";
  return "[" + bench::render_value(*z.min) + (z.min_truncated ? "~" : "") + ", " + bench::render_value(*z.max) +
         (z.max_truncated ? "~" : "") + "]";
}

void print_summary(const FileFooter& f, uint64_t file_bytes, std::ostream& out) {
  out << "rows: " << f.row_count << "\nbatches: " << f.batches.size() << "\nbytes: " << file_bytes
      << "\npolicy: " << f.policy << "\ncodec: " << codec_name(f.codec) << "\ncolumns:\n";
  for (size_t c = 0; c < f.schema.size(); ++c) {
    const auto& field = f.schema.field(c);
    std::set<std::string> encodings;
    uint64_t bytes = 0;
    for (const auto& b : f.batches) {
      encodings.insert(b.chunks[c].encoding.to_string());
      bytes += b.chunks[c].stored_bytes();
    }
    std::string enc;
    for (const auto& e : encodings) enc += (enc.empty() ? "" : ",") + e;
    out << "  " << field.name << " " << field.type.to_string() << (field.nullable ? " nullable" : "")
        << " encoding=" << enc << " bytes=" << bytes << "\n";
  }
}

void print_inspect(const FileFooter& f, uint64_t file_bytes, std::ostream& out) {
  print_summary(f, file_bytes, out);
  out << "chunks:\n";
  for (size_t b = 0; b < f.batches.size(); ++b) {
    const auto& batch = f.batches[b];
    out << "  batch " << b << " rows " << batch.first_row << ".." << batch.first_row + batch.row_count << "\n";
    for (size_t c = 0; c < batch.chunks.size(); ++c) {
      const ChunkMeta& m = batch.chunks[c];
      out << "    " << f.schema.field(c).name << " encoding=" << m.encoding.to_string()
          << " codec=" << codec_name(m.codec) << " pages=" << m.data_pages.size() << " nulls=" << m.null_count
          << " bytes=" << m.stored_bytes() << " zone=" << zone_text(m.zone_map) << "\n";
    }
  }
}

struct Settings {
  std::vector<std::pair<std::string, std::string>> config;
};

/// Fills options the command line left unset from the config file.
void merge_config(CLI::App& sub, const Settings& settings) {
  for (const auto& [key, value] : settings.config) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) {
      if (sub.get_parent() && sub.get_parent()->get_option_no_throw("--" + key)) continue;
      throw UsageError("unknown config key '" + key + "' for " + sub.get_name());
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

int exit_code_for(const ColfError& e) {
  switch (e.code()) {
    case ErrorCode::kIoError:
    case ErrorCode::kNotColf:
    case ErrorCode::kConfigError: return kExitUsage;
    default: return kExitDataError;
  }
}

}  // namespace

PredicateList parse_where(const std::string& text, const Schema& schema) {
  static const std::regex term(R"(^\s*([A-Za-z_][A-Za-z0-9_.]*)\s*(<=|>=|=|<|>)\s*(.*?)\s*$)");
  PredicateList out;
  if (trim(text).empty()) return out;
  for (const auto& part : split_outside_quotes(text, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, term) || m[3].str().empty()) {
      throw UsageError("cannot parse condition '" + trim(part) + "' (expected col OP literal)");
    }
    const std::string col = m[1];
    if (!schema.contains(col)) throw UsageError("unknown column '" + col + "' in --where");
    const std::string op = m[2];
    const Value v = literal_for(m[3], schema.field(schema.index_of(col)).type, col);
    Predicate p;
    p.column = col;
    p.operand = v;
    p.op = op == "=" ? CompareOp::kEq : op == "<" ? CompareOp::kLt : op == ">" ? CompareOp::kGt
         : op == "<=" ? CompareOp::kLe : CompareOp::kGe;
    out.push_back(std::move(p));
  }
  return out;
}

Schema parse_schema_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    std::vector<Field> fields;
    for (const auto& c : j.at("columns")) {
      fields.push_back(Field{c.at("name").get<std::string>(), ColumnType::parse(c.at("type").get<std::string>()),
                             c.value("nullable", true)});
    }
    if (fields.empty()) throw UsageError("schema has no columns");
    return Schema(std::move(fields));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad schema file: ") + e.what());
  } catch (const ColfError& e) {
    throw UsageError(std::string("bad schema file: ") + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw UsageError("config line " + std::to_string(n) + ": expected key=value");
    }
    out.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"COLF columnar file tool", "colf"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file supplying defaults for unset flags");

  std::string csv_path, schema_path, out_path, policy = "parquet-like", codec = "store";
  uint32_t batch_rows = kDefaultBatchRows;
  auto* write = app.add_subcommand("write", "Write a CSV file as COLF");
  write->add_option("--csv", csv_path, "input CSV with a header row")->required();
  write->add_option("--schema", schema_path, "JSON schema file")->required();
  write->add_option("--out", out_path, "output COLF file")->required();
  write->add_option("--policy", policy, "parquet-like, orc-like, arrow-like or arrow-like-dict");
  write->add_option("--codec", codec, "store, lz4 or deflate");
  write->add_option("--batch-rows", batch_rows, "rows per batch");

  std::string inspect_path;
  bool inspect_json = false, inspect_stats = false;
  auto* inspect = app.add_subcommand("inspect", "Print footer metadata without reading data pages");
  inspect->add_option("path", inspect_path, "COLF file")->required();
  inspect->add_flag("--json", inspect_json, "JSON output");
  inspect->add_flag("--stats", inspect_stats, "print decode counters to stderr");

  std::string query_path, select, where, strategy = "lazy-im-direct";
  bool query_stats = false;
  auto* query = app.add_subcommand("query", "Filter and project a COLF file; CSV to stdout");
  query->add_option("path", query_path, "COLF file")->required();
  query->add_option("--select", select, "comma-separated columns (default all)");
  query->add_option("--where", where, "comma-separated AND of col OP literal");
  query->add_option("--strategy", strategy, "execution strategy");
  query->add_flag("--stats", query_stats, "print decode counters and timings to stderr");

  std::string suite, report_path, report_format = "json", real_codec = "lz4";
  uint64_t seed = 42;
  double scale = 1.0;
  int reps = 5;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write its report");
  bench->add_option("--suite", suite, "compression, selectivity, subexpr or vectors")->required();
  auto* seed_opt = bench->add_option("--seed", seed, "generator seed (default COLF_SEED or 42)");
  bench->add_option("--out", report_path, "report path (default stdout)");
  bench->add_option("--format", report_format, "json or csv");
  bench->add_option("--scale", scale, "row count multiplier");
  bench->add_option("--reps", reps, "timed runs per case");
  bench->add_option("--codec", real_codec, "real codec compared with store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings settings;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config file " + config_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      settings.config = parse_config_text(buf.str());
    }
    CLI::App* sub = app.get_subcommands().front();
    merge_config(*sub, settings);

    if (sub == write) {
      const Schema schema = parse_schema_json(read_file(schema_path));
      WriteOptions opts;
      opts.policy = policy;
      opts.codec = parse_codec(codec);
      opts.batch_rows = batch_rows;
      if (!is_known_policy(policy)) throw UsageError("unknown policy '" + policy + "'");
      if (!std::filesystem::exists(csv_path)) throw UsageError("no such file " + csv_path);
      const Table table = bench::ingest_csv(csv_path, schema);
      const FileFooter footer = write_table_file(schema, table, opts, out_path);
      print_summary(footer, std::filesystem::file_size(out_path), out);
      return kExitOk;
    }

    if (sub == inspect) {
      if (!std::filesystem::exists(inspect_path)) throw UsageError("no such file " + inspect_path);
      MappedFileSource source(inspect_path);
      DecodeCounters counters;
      const FileFooter footer = read_footer(source, &counters);
      if (inspect_json) {
        out << footer_json(footer, source.size()).dump(2) << "\n";
      } else {
        print_inspect(footer, source.size(), out);
      }
      if (inspect_stats) err << counters.snapshot().to_string() << "\n";
      return kExitOk;
    }

    if (sub == query) {
      const Strategy s = parse_strategy(strategy);
      if (!std::filesystem::exists(query_path)) throw UsageError("no such file " + query_path);
      auto source = std::make_shared<MappedFileSource>(query_path);
      const FileFooter footer = read_footer(*source);
      SubexpressionQuery q;
      q.name = "cli";
      q.projection = select.empty() ? all_column_names(footer.schema) : split_list(select);
      for (const auto& c : q.projection) {
        if (!footer.schema.contains(c)) throw UsageError("unknown column '" + c + "' in --select");
      }
      q.predicates = parse_where(where, footer.schema);
      const SubexpressionResult r = eval_subexpression(q, source, s);
      out << bench::write_csv(r.table);
      if (query_stats) {
        err << "strategy=" << strategy_name(s) << " rows=" << r.table.row_count
            << " fallback=" << (r.fallback ? "true" : "false") << "\n"
            << r.stats.to_string() << "\n";
        if (r.load_ms) err << "load_ms=" << *r.load_ms << " ";
        if (r.compute_ms) err << "compute_ms=" << *r.compute_ms << " ";
        err << "total_ms=" << r.total_ms << "\n";
      }
      return kExitOk;
    }

    if (sub == bench) {
      bench::SuiteConfig cfg;
      if (seed_opt->count() > 0) {
        cfg.seed = seed;
      } else if (const char* env = std::getenv("COLF_SEED")) {
        if (!read_number(std::string(env), cfg.seed)) throw UsageError("COLF_SEED must be an unsigned integer");
      }
      if (!(scale > 0)) throw UsageError("--scale must be positive");
      cfg.scale = scale;
      cfg.reps = reps;
      cfg.real_codec = parse_codec(real_codec);
      if (report_format != "json" && report_format != "csv") throw UsageError("--format must be json or csv");
      const auto& names = bench::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::string valid;
        for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
        throw UsageError("unknown suite '" + suite + "' (valid: " + valid + ")");
      }
      const bench::Report report = bench::run_suite(suite, cfg);
      const std::string text =
          bench::emit_report(report, report_format == "json" ? bench::ReportFormat::kJson : bench::ReportFormat::kCsv);
      if (report_path.empty()) {
        out << text;
      } else {
        std::ofstream f(report_path, std::ios::binary);
        if (!(f << text)) throw ColfError(ErrorCode::kIoError, "cannot write " + report_path);
      }
      for (const auto& c : report.checks) {
        err << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      }
      return report.passed() ? kExitOk : kExitDataError;
    }
  } catch (const UsageError& e) {
    err << "colf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ColfError& e) {
    err << "colf: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "colf: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace colf::cli
