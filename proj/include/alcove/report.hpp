#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "alcove/monte_carlo.hpp"

namespace alcove {

// Shortest round-trip decimal form.
std::string format_number(double v);

// FNV-1a 64-bit, as 16 hex digits.
std::string content_hash(std::string_view bytes);

// Report body: name, pass, statistics, provenance and a hash per sample set.
nlohmann::json to_json(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);

// Long format: series,index,value.
void write_samples_csv(const ExperimentReport& report, std::ostream& os);

}  // namespace alcove
