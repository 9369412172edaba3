#include "colf/bench/report.hpp"

#include <cstdio>

#include "colf/bench/csv.hpp"
#include "json.hpp"

namespace colf::bench {

namespace {

using Json = nlohmann::ordered_json;

Json stats_json(const DecodeStats& s) {
  return Json{{"values_decoded", s.values_decoded}, {"pages_read", s.pages_read},
              {"chunks_opened", s.chunks_opened},   {"chunks_skipped", s.chunks_skipped},
              {"batches_skipped", s.batches_skipped}, {"bytes_read", s.bytes_read},
              {"footer_bytes_read", s.footer_bytes_read}};
}

template <typename V>
Json pairs_json(const std::vector<std::pair<std::string, V>>& pairs) {
  Json j = Json::object();
  for (const auto& [k, v] : pairs) j[k] = v;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

template <typename V>
std::string joined(const std::vector<std::pair<std::string, V>>& pairs) {
  std::string out;
  for (const auto& [k, v] : pairs) {
    if (!out.empty()) out.push_back(';');
    out += k + "=";
    if constexpr (std::is_same_v<V, std::string>) {
      out += v;
    } else {
      out += Json(v).dump();
    }
  }
  return out;
}

}  // namespace

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::check(std::string name, bool ok, std::string detail) {
  checks.push_back(Check{std::move(name), ok, std::move(detail)});
}

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    j["metadata"] = pairs_json(r.metadata);
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    Json cases = Json::array();
    for (const auto& c : r.cases) {
      cases.push_back(Json{{"name", c.name},
                           {"config", pairs_json(c.config)},
                           {"sizes", {{"encoded", c.sizes.encoded}, {"compressed", c.sizes.compressed}, {"raw", c.sizes.raw}}},
                           {"stats", stats_json(c.stats)},
                           {"timings_ms", pairs_json(c.timings_ms)},
                           {"metrics", pairs_json(c.metrics)},
                           {"checksum", c.checksum}});
    }
    j["cases"] = cases;
    return j.dump(2) + "\n";
  }
  std::string out =
      "suite,case,config,encoded_bytes,compressed_bytes,raw_bytes,values_decoded,pages_read,chunks_opened,"
      "chunks_skipped,batches_skipped,bytes_read,footer_bytes_read,timings_ms,metrics,checksum\n";
  for (const auto& c : r.cases) {
    const DecodeStats& s = c.stats;
    out += csv_escape(r.suite) + "," + csv_escape(c.name) + "," + csv_escape(joined(c.config)) + "," +
           std::to_string(c.sizes.encoded) + "," + std::to_string(c.sizes.compressed) + "," +
           std::to_string(c.sizes.raw) + "," + std::to_string(s.values_decoded) + "," +
           std::to_string(s.pages_read) + "," + std::to_string(s.chunks_opened) + "," +
           std::to_string(s.chunks_skipped) + "," + std::to_string(s.batches_skipped) + "," +
           std::to_string(s.bytes_read) + "," + std::to_string(s.footer_bytes_read) + "," +
           csv_escape(joined(c.timings_ms)) + "," + csv_escape(joined(c.metrics)) + "," + c.checksum + "\n";
  }
  return out;
}

std::string table_checksum(const PlainColumns& table) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : write_csv(table)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace colf::bench
