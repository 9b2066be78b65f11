#include "alcove/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace alcove {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["pass"] = report.pass;
  nlohmann::json stats = nlohmann::json::object();
  for (const auto& [k, v] : report.statistics) {
    if (std::isfinite(v)) stats[k] = v;
    else stats[k] = format_number(v);
  }
  j["statistics"] = stats;
  j["provenance"] = report.provenance;
  nlohmann::json hashes = nlohmann::json::object();
  for (const auto& [k, xs] : report.samples) {
    std::string bytes;
    for (double x : xs) bytes += format_number(x) + '\n';
    hashes[k] = {{"count", xs.size()}, {"fnv1a", content_hash(bytes)}};
  }
  j["samples"] = hashes;
  return j;
}

std::string report_json(const ExperimentReport& report) { return to_json(report).dump(2) + "\n"; }

void write_samples_csv(const ExperimentReport& report, std::ostream& os) {
  os << "series,index,value\n";
  for (const auto& [k, xs] : report.samples)
    for (std::size_t i = 0; i < xs.size(); ++i) os << k << ',' << i << ',' << format_number(xs[i]) << '\n';
}

}  // namespace alcove
